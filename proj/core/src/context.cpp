// Copyright 2026 The knowctx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "knowctx/context.hpp"

#include <cmath>
#include <sstream>

#include "knowctx/errors.hpp"

namespace knowctx {
namespace {

std::string index_text(std::size_t index) {
  const std::size_t one_based = index + 1;
  if (one_based < 10) return std::to_string(one_based);
  return "{" + std::to_string(one_based) + "}";
}

bool valid_level(Knowability level) {
  const int v = static_cast<int>(level);
  return v >= 1 && v <= 3;
}

void check_row_sum(std::span<const Amplitude> row, const ProbabilityRule& rule,
                   const std::string& where) {
  double sum = 0.0;
  for (const Amplitude& c : row) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::kInvalidArgument, where + " contains a non-finite amplitude");
    }
    if (rule.is_classical() && (c.imag() != 0.0 || c.real() < 0.0)) {
      throw Error(ErrorCode::kRuleContractViolation,
                  where + ": the classical rule takes nonnegative real propensities");
    }
    sum += rule(c);
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << where << " sums to " << sum << " under rule " << rule.name()
        << " (tolerance " << kNormalizationTolerance << ")";
    throw Error(ErrorCode::kNormalizationViolation, msg.str());
  }
}

std::vector<std::string> validate(const std::vector<AlternativeSet>& layers,
                                  const AmplitudeAssignment& amplitudes,
                                  const ProbabilityRule& rule) {
  if (layers.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "a context needs at least one layer");
  }
  for (const AlternativeSet& set : layers) {
    if (set.size() == 0) {
      throw Error(ErrorCode::kShapeMismatch,
                  "layer " + std::to_string(set.id) + " has no alternatives");
    }
    if (!valid_level(set.knowability)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "layer " + std::to_string(set.id) + " has an invalid knowability level");
    }
    for (std::size_t a = 0; a < set.labels.size(); ++a) {
      for (std::size_t b = a + 1; b < set.labels.size(); ++b) {
        if (set.labels[a] == set.labels[b]) {
          throw Error(ErrorCode::kShapeMismatch,
                      "duplicate label " + set.labels[a] + " in layer " +
                          std::to_string(set.id));
        }
      }
    }
  }
  if (layers.back().knowability != Knowability::kL3) {
    throw Error(ErrorCode::kFinalLayerNotObservable,
                "the final layer must have knowability level 3");
  }
  if (amplitudes.first_layer.size() != layers.front().size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "first layer has " + std::to_string(layers.front().size()) +
                    " alternatives but " +
                    std::to_string(amplitudes.first_layer.size()) + " amplitudes");
  }
  if (amplitudes.transitions.size() + 1 != layers.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(layers.size()) + " layers need " +
                    std::to_string(layers.size() - 1) + " transition matrices, got " +
                    std::to_string(amplitudes.transitions.size()));
  }
  for (std::size_t k = 1; k < layers.size(); ++k) {
    const AmplitudeMatrix& t = amplitudes.transitions[k - 1];
    if (t.rows() != layers[k - 1].size() || t.cols() != layers[k].size()) {
      std::ostringstream msg;
      msg << "transition into layer " << k << " is " << t.rows() << "x" << t.cols()
          << ", expected " << layers[k - 1].size() << "x" << layers[k].size();
      throw Error(ErrorCode::kShapeMismatch, msg.str());
    }
  }

  check_row_sum(amplitudes.first_layer, rule, "first layer");
  for (std::size_t k = 1; k < layers.size(); ++k) {
    const AmplitudeMatrix& t = amplitudes.transitions[k - 1];
    for (std::size_t r = 0; r < t.rows(); ++r) {
      check_row_sum(t.row(r), rule,
                    "row " + std::to_string(r) + " of the transition into layer " +
                        std::to_string(k));
    }
  }

  std::vector<std::string> warnings;
  for (std::size_t k = 1; k < layers.size(); ++k) {
    if (layers[k - 1].knowability == Knowability::kL1 &&
        layers[k].knowability == Knowability::kL1) {
      warnings.push_back("layers " + std::to_string(k - 1) + " and " +
                         std::to_string(k) + " are adjacent knowability-1 sets");
    }
  }
  return warnings;
}

}  // namespace

AmplitudeMatrix AmplitudeMatrix::from_rows(
    const std::vector<std::vector<Amplitude>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  AmplitudeMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorCode::kShapeMismatch, "ragged amplitude matrix");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

AmplitudeMatrix AmplitudeMatrix::identity(std::size_t n) {
  AmplitudeMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<LayerSpec> ContextNetwork::layer_specs() const {
  std::vector<LayerSpec> specs;
  specs.reserve(layers_.size());
  for (const AlternativeSet& set : layers_) specs.push_back({set.size(), set.knowability});
  return specs;
}

ContextNetwork build_context(std::span<const LayerSpec> layers,
                             AmplitudeAssignment amplitudes, ProbabilityRule rule,
                             std::string name) {
  std::vector<AlternativeSet> sets;
  sets.reserve(layers.size());
  for (std::size_t k = 0; k < layers.size(); ++k) {
    AlternativeSet set;
    set.id = k;
    set.knowability = layers[k].knowability;
    for (std::size_t j = 0; j < layers[k].size; ++j) {
      set.labels.push_back(alternative_label(k, j));
    }
    sets.push_back(std::move(set));
  }
  auto warnings = validate(sets, amplitudes, rule);
  ContextNetwork ctx(std::move(name), std::move(sets), std::move(amplitudes), rule);
  ctx.warnings_ = std::move(warnings);
  return ctx;
}

ContextNetwork with_layers(const ContextNetwork& ctx,
                           std::vector<AlternativeSet> layers,
                           AmplitudeAssignment amplitudes) {
  auto warnings = validate(layers, amplitudes, ctx.rule());
  ContextNetwork out(ctx.name(), std::move(layers), std::move(amplitudes), ctx.rule());
  out.warnings_ = std::move(warnings);
  return out;
}

std::string alternative_label(std::size_t layer, std::size_t index) {
  return "A" + index_text(index) + std::string(layer, '\'');
}

std::string hypothetical_label(std::size_t layer, std::size_t index) {
  return "~" + alternative_label(layer, index);
}

std::string amplitude_symbol(std::size_t layer, std::size_t from, std::size_t to) {
  if (layer == 0) return "c" + index_text(to);
  return "c" + std::string(layer - 1, '\'') + index_text(from) + index_text(to);
}

std::string_view to_string(Knowability level) noexcept {
  switch (level) {
    case Knowability::kL1: return "L1";
    case Knowability::kL2: return "L2";
    case Knowability::kL3: return "L3";
  }
  return "L?";
}

}  // namespace knowctx

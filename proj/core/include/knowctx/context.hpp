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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "knowctx/rule.hpp"

namespace knowctx {

/// Knowability of a complete set of alternatives.
///   L1: no alternative will ever be known to come true.
///   L2: it may become known which alternative is true.
///   L3: it will become known which alternative is true.
enum class Knowability : int { kL1 = 1, kL2 = 2, kL3 = 3 };

/// Absolute tolerance on every row sum checked at build time.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Dense row-major matrix of transition amplitudes c_{jj'}.
class AmplitudeMatrix {
 public:
  AmplitudeMatrix() = default;
  AmplitudeMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Throws Error(kShapeMismatch) on ragged input.
  static AmplitudeMatrix from_rows(const std::vector<std::vector<Amplitude>>& rows);
  static AmplitudeMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Amplitude& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Amplitude& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const Amplitude> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Amplitude> data() const noexcept { return data_; }

  friend bool operator==(const AmplitudeMatrix&, const AmplitudeMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Amplitude> data_;
};

struct AlternativeSet {
  std::size_t id = 0;
  std::vector<std::string> labels;
  Knowability knowability = Knowability::kL3;
  /// Original size when hypothetical alternatives were appended.
  std::optional<std::size_t> padded_from;

  std::size_t size() const noexcept { return labels.size(); }
};

/// c_j for the first layer and one M x M' matrix per consecutive layer pair.
struct AmplitudeAssignment {
  std::vector<Amplitude> first_layer;
  std::vector<AmplitudeMatrix> transitions;

  friend bool operator==(const AmplitudeAssignment&, const AmplitudeAssignment&) = default;
};

struct LayerSpec {
  std::size_t size = 0;
  Knowability knowability = Knowability::kL3;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Validated linear chain of complete alternative sets. Immutable.
class ContextNetwork {
 public:
  const std::string& name() const noexcept { return name_; }
  const std::vector<AlternativeSet>& layers() const noexcept { return layers_; }
  const AlternativeSet& layer(std::size_t k) const { return layers_.at(k); }
  std::size_t layer_count() const noexcept { return layers_.size(); }
  const AmplitudeAssignment& amplitudes() const noexcept { return amplitudes_; }
  const ProbabilityRule& rule() const noexcept { return rule_; }
  /// Non-fatal findings from validation (e.g. adjacent L1 layers).
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Transition into layer k (k >= 1).
  const AmplitudeMatrix& transition_into(std::size_t k) const {
    return amplitudes_.transitions.at(k - 1);
  }

  std::vector<LayerSpec> layer_specs() const;

 private:
  friend ContextNetwork build_context(std::span<const LayerSpec>,
                                      AmplitudeAssignment, ProbabilityRule,
                                      std::string);
  friend ContextNetwork with_layers(const ContextNetwork&,
                                    std::vector<AlternativeSet>,
                                    AmplitudeAssignment);

  ContextNetwork(std::string name, std::vector<AlternativeSet> layers,
                 AmplitudeAssignment amplitudes, ProbabilityRule rule)
      : name_(std::move(name)),
        layers_(std::move(layers)),
        amplitudes_(std::move(amplitudes)),
        rule_(rule) {}

  std::string name_;
  std::vector<AlternativeSet> layers_;
  AmplitudeAssignment amplitudes_;
  ProbabilityRule rule_;
  std::vector<std::string> warnings_;
};

/// Validates shapes, knowability of the final layer and row normalization
/// under `rule`, then returns the network.
///
/// Errors: kShapeMismatch, kFinalLayerNotObservable, kNormalizationViolation,
/// kRuleContractViolation (non-real or negative amplitudes with the classical
/// rule).
ContextNetwork build_context(std::span<const LayerSpec> layers,
                             AmplitudeAssignment amplitudes,
                             ProbabilityRule rule, std::string name = "");

/// Rebuilds `ctx` with replaced layers and amplitudes, re-running validation.
ContextNetwork with_layers(const ContextNetwork& ctx,
                           std::vector<AlternativeSet> layers,
                           AmplitudeAssignment amplitudes);

/// "A1", "A2'", "A3''" (1-based index, one prime per layer).
std::string alternative_label(std::size_t layer, std::size_t index);
/// Label of an appended hypothetical alternative, e.g. "~A3'".
std::string hypothetical_label(std::size_t layer, std::size_t index);
/// "c1" for the first layer; "c12", "c'12", ... for the transition into
/// layer >= 1. Indices above 9 are braced: "c{10}1".
std::string amplitude_symbol(std::size_t layer, std::size_t from, std::size_t to);

std::string_view to_string(Knowability level) noexcept;

}  // namespace knowctx

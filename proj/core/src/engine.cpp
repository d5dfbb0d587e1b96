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

#include "knowctx/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "knowctx/errors.hpp"

namespace knowctx {
namespace {

constexpr std::size_t kMaxBranches = 1'000'000;

enum class Mode { kCoherent, kBranch };

void check_layer(const ContextNetwork& ctx, std::size_t layer) {
  if (layer >= ctx.layer_count()) {
    throw Error(ErrorCode::kInvalidArgument, "layer " + std::to_string(layer) +
                                                 " out of range for a " +
                                                 std::to_string(ctx.layer_count()) +
                                                 "-layer context");
  }
}

std::vector<Amplitude> propagate(std::span<const Amplitude> amps, const AmplitudeMatrix& t) {
  std::vector<Amplitude> next(t.cols());
  for (std::size_t j = 0; j < t.rows(); ++j) {
    if (amps[j] == Amplitude{}) continue;
    for (std::size_t b = 0; b < t.cols(); ++b) next[b] += amps[j] * t(j, b);
  }
  return next;
}

// Composes from `start` amplitudes on layer `first` up to `target`. Layers
// marked kBranch are summed classically (one f per alternative, i.e. per
// juxtaposed sequence); kCoherent layers are summed inside f.
std::vector<double> compose(const ContextNetwork& ctx, std::size_t first,
                            std::vector<Amplitude> start, const std::vector<Mode>& modes,
                            std::size_t target) {
  std::vector<std::vector<Amplitude>> branches{std::move(start)};
  for (std::size_t i = first; i < target; ++i) {
    if (modes[i] == Mode::kBranch) {
      std::vector<std::vector<Amplitude>> split;
      for (const auto& amps : branches) {
        for (std::size_t j = 0; j < amps.size(); ++j) {
          if (amps[j] == Amplitude{}) continue;
          std::vector<Amplitude> one(amps.size());
          one[j] = amps[j];
          split.push_back(std::move(one));
        }
      }
      if (split.size() > kMaxBranches) {
        throw Error(ErrorCode::kPathLimitExceeded, "more than 10^6 classical branches");
      }
      branches = std::move(split);
    }
    const AmplitudeMatrix& t = ctx.transition_into(i + 1);
    for (auto& amps : branches) amps = propagate(amps, t);
  }
  const ProbabilityRule& f = ctx.rule();
  std::vector<double> probs(ctx.layer(target).size(), 0.0);
  for (const auto& amps : branches) {
    for (std::size_t j = 0; j < probs.size(); ++j) probs[j] += f(amps[j]);
  }
  return probs;
}

std::vector<double> classical_chain(const ContextNetwork& ctx, std::size_t target) {
  const ProbabilityRule& f = ctx.rule();
  std::vector<double> p;
  for (const Amplitude& c : ctx.amplitudes().first_layer) p.push_back(f(c));
  for (std::size_t k = 1; k <= target; ++k) {
    const AmplitudeMatrix& t = ctx.transition_into(k);
    std::vector<double> next(t.cols(), 0.0);
    for (std::size_t j = 0; j < t.rows(); ++j) {
      for (std::size_t b = 0; b < t.cols(); ++b) next[b] += p[j] * f(t(j, b));
    }
    p = std::move(next);
  }
  return p;
}

OutcomeDistribution finish(const ContextNetwork& ctx, std::size_t layer, Knowability level,
                           std::vector<double> probs, std::string conditioning) {
  OutcomeDistribution d;
  d.layer = layer;
  d.probs = std::move(probs);
  d.observable = level == Knowability::kL3;
  d.observed_count = ctx.layer(layer).padded_from.value_or(ctx.layer(layer).size());
  d.normalization_deviation = std::abs(d.sum() - 1.0);
  if (!d.observable) {
    conditioning = "propensities, non-observable (knowability " +
                   std::to_string(static_cast<int>(level)) + "); " + conditioning;
  }
  d.conditioning = std::move(conditioning);
  if (d.observable && d.normalization_deviation > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "probabilities sum to " << d.sum();
    d.warnings.push_back(msg.str());
  }
  for (std::size_t j = 0; j < d.probs.size(); ++j) {
    if (d.probs[j] < 0.0 || d.probs[j] > 1.0 + kNormalizationTolerance) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "value " << d.probs[j] << " for alternative " << j << " lies outside [0, 1]";
      d.warnings.push_back(msg.str());
    }
  }
  return d;
}

void require_not_classical(const ContextNetwork& ctx) {
  if (ctx.rule().is_classical()) {
    throw Error(ErrorCode::kRuleContractViolation,
                "the identity rule turns interference into classical composition");
  }
}

std::string layer_list(const std::vector<std::size_t>& layers) {
  std::string s = "{";
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(layers[i]);
  }
  return s + "}";
}

}  // namespace

double OutcomeDistribution::sum() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

std::vector<Amplitude> coherent_amplitudes(const ContextNetwork& ctx, std::size_t layer) {
  check_layer(ctx, layer);
  std::vector<Amplitude> amps = ctx.amplitudes().first_layer;
  for (std::size_t k = 1; k <= layer; ++k) amps = propagate(amps, ctx.transition_into(k));
  return amps;
}

OutcomeDistribution eval_classical(const ContextNetwork& ctx, std::size_t layer) {
  check_layer(ctx, layer);
  for (std::size_t k = 0; k < layer; ++k) {
    if (ctx.layer(k).knowability != Knowability::kL3) {
      throw Error(ErrorCode::kKnowabilityMismatch,
                  "classical chaining needs path information, layer " + std::to_string(k) +
                      " is " + std::string(to_string(ctx.layer(k).knowability)));
    }
  }
  return finish(ctx, layer, ctx.layer(layer).knowability, classical_chain(ctx, layer),
                "classical chain");
}

OutcomeDistribution eval_interference(const ContextNetwork& ctx, std::size_t layer) {
  check_layer(ctx, layer);
  require_not_classical(ctx);
  const ProbabilityRule& f = ctx.rule();
  std::vector<double> probs;
  for (const Amplitude& a : coherent_amplitudes(ctx, layer)) probs.push_back(f(a));
  return finish(ctx, layer, ctx.layer(layer).knowability, std::move(probs), "interference");
}

OutcomeDistribution eval_interference(const ContextNetwork& ctx, const EpistemicState& state,
                                      std::size_t layer) {
  check_layer(ctx, layer);
  if (state.size() != ctx.layer_count()) {
    throw Error(ErrorCode::kShapeMismatch, "state does not belong to this context");
  }
  for (std::size_t k = 0; k < layer; ++k) {
    if (state.is_resolved(k)) {
      throw Error(ErrorCode::kKnowabilityMismatch,
                  "layer " + std::to_string(k) + " is already resolved");
    }
  }
  OutcomeDistribution d = eval_interference(ctx, layer);
  if (state.level(layer) != ctx.layer(layer).knowability) {
    d = finish(ctx, layer, state.level(layer), std::move(d.probs), "interference");
  }
  return d;
}

OutcomeDistribution eval_delayed(const ContextNetwork& ctx, std::size_t layer) {
  check_layer(ctx, layer);
  for (std::size_t k = 0; k < layer; ++k) {
    if (ctx.layer(k).knowability == Knowability::kL1) {
      throw Error(ErrorCode::kKnowabilityMismatch,
                  "delayed composition needs knowable paths, layer " + std::to_string(k) +
                      " is L1");
    }
  }
  std::vector<Mode> modes(ctx.layer_count(), Mode::kBranch);
  return finish(ctx, layer, ctx.layer(layer).knowability,
                compose(ctx, 0, ctx.amplitudes().first_layer, modes, layer), "delayed choice");
}

OutcomeDistribution eval_auto(const ContextNetwork& ctx, const EpistemicState& state,
                              std::size_t layer) {
  check_layer(ctx, layer);
  if (state.size() != ctx.layer_count()) {
    throw Error(ErrorCode::kShapeMismatch, "state does not belong to this context");
  }
  if (const auto* r = std::get_if<Resolved>(&state.bracket(layer))) {
    std::vector<double> delta(ctx.layer(layer).size(), 0.0);
    delta[r->alternative] = 1.0;
    return finish(ctx, layer, Knowability::kL3, std::move(delta),
                  "observed " + state.labels(layer).at(r->alternative));
  }

  std::size_t first = 0;
  std::vector<Amplitude> start = ctx.amplitudes().first_layer;
  std::string given;
  for (std::size_t k = layer; k-- > 0;) {
    if (const auto* r = std::get_if<Resolved>(&state.bracket(k))) {
      first = k;
      start.assign(ctx.layer(k).size(), Amplitude{});
      start[r->alternative] = 1.0;
      given = "given " + state.labels(k).at(r->alternative);
      break;
    }
  }

  std::vector<Mode> modes(ctx.layer_count(), Mode::kCoherent);
  std::vector<std::size_t> coherent;
  std::vector<std::size_t> delayed;
  for (std::size_t k = first; k < layer; ++k) {
    if (state.is_resolved(k)) continue;
    const bool unknowable = state.is_collapsed(k) || state.level(k) == Knowability::kL1;
    modes[k] = unknowable ? Mode::kCoherent : Mode::kBranch;
    (unknowable ? coherent : delayed).push_back(k);
  }
  if (!coherent.empty()) require_not_classical(ctx);

  std::string conditioning;
  if (coherent.empty() && delayed.empty()) {
    conditioning = given.empty() ? "first layer" : "classical chain, " + given;
  } else if (delayed.empty()) {
    conditioning = "interference over layers " + layer_list(coherent);
  } else if (coherent.empty()) {
    conditioning = "delayed choice over layers " + layer_list(delayed);
  } else {
    conditioning = "interference over layers " + layer_list(coherent) +
                   ", delayed choice over layers " + layer_list(delayed);
  }
  if (!given.empty() && !(coherent.empty() && delayed.empty())) conditioning += ", " + given;

  return finish(ctx, layer, state.level(layer),
                compose(ctx, first, std::move(start), modes, layer), conditioning);
}

double divergence_check(const ContextNetwork& ctx) {
  if (ctx.layer_count() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "divergence needs at least two layers");
  }
  const std::size_t last = ctx.layer_count() - 1;
  const ProbabilityRule& f = ctx.rule();
  const std::vector<Amplitude> amps = coherent_amplitudes(ctx, last);
  const std::vector<double> chained = classical_chain(ctx, last);
  double worst = 0.0;
  for (std::size_t j = 0; j < amps.size(); ++j) {
    worst = std::max(worst, std::abs(f(amps[j]) - chained[j]));
  }
  return worst;
}

}  // namespace knowctx

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
#include <string>
#include <vector>

#include "knowctx/context.hpp"
#include "knowctx/epistemic_state.hpp"

namespace knowctx {

/// Outcome weights for one layer of a context.
///
/// When the layer is not at knowability 3 the values are propensities, not
/// probabilities, and `observable` is false. For a padded final layer only
/// the first `observed_count` entries belong to real alternatives. Sums that
/// deviate from 1 and values outside [0, 1] are reported as-is with a warning.
struct OutcomeDistribution {
  std::size_t layer = 0;
  std::vector<double> probs;
  std::string conditioning;
  bool observable = true;
  std::size_t observed_count = 0;
  double normalization_deviation = 0.0;
  std::vector<std::string> warnings;

  double sum() const;
};

/// Law of total probability chained across layers:
/// p'_{j'} = sum_j f(c_j) f(c_{jj'}). Requires every layer before `layer` to
/// be at knowability 3 (kKnowabilityMismatch otherwise).
OutcomeDistribution eval_classical(const ContextNetwork& ctx, std::size_t layer);

/// Coherent composition p'_{j'} = f(sum over paths of the path products),
/// treating every upstream layer as unknowable. The classical rule is rejected
/// with kRuleContractViolation because it cannot produce interference.
OutcomeDistribution eval_interference(const ContextNetwork& ctx, std::size_t layer);
/// As above, but rejects states where an upstream layer is already resolved.
OutcomeDistribution eval_interference(const ContextNetwork& ctx, const EpistemicState& state,
                                      std::size_t layer);

/// Delayed-choice composition read off the unresolved bracket: one f per
/// juxtaposed path product, p'_{j'} = sum_paths f(c_j c_{jj'} ...). Requires
/// no upstream layer at knowability 1.
OutcomeDistribution eval_delayed(const ContextNetwork& ctx, std::size_t layer);

/// The single rule applied to any state. For layers before `layer`, from the
/// latest resolved one onward: resolved layers condition, collapsed layers
/// and unresolved knowability-1 layers compose coherently, unresolved
/// knowability-2/3 layers compose as delayed choices.
OutcomeDistribution eval_auto(const ContextNetwork& ctx, const EpistemicState& state,
                              std::size_t layer);

/// max_{j'} | f(sum_j c_j c_{jj'}) - sum_j f(c_j) f(c_{jj'}) | on the final
/// layer. Zero for the classical rule; nonzero for Born's rule on generic
/// amplitudes. Requires at least two layers.
double divergence_check(const ContextNetwork& ctx);

/// Coherent path-sum amplitudes sum_paths c_j c_{jj'} ... into `layer`.
std::vector<Amplitude> coherent_amplitudes(const ContextNetwork& ctx, std::size_t layer);

}  // namespace knowctx

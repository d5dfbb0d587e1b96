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
#include <string>
#include <vector>

#include "knowctx/context.hpp"

namespace knowctx {

/// Observed counts of the final-layer alternatives.
struct FrequencyTable {
  std::vector<std::uint64_t> counts;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string generator;

  std::vector<double> freq() const;
};

/// Trials run in blocks of this many; block b draws from derive_seed(seed, b).
inline constexpr std::uint64_t kTrialBlock = 65536;

/// Samples each trial layer by layer: first alternative with probability
/// f(c_j), then each next one with f(c_{jj'}) given the current one.
///
/// Requires Born's rule (kUnsupportedRule) and every layer at knowability 3
/// (kKnowabilityMismatch): without observed paths there is nothing to
/// sample. Blocks are spread over `workers` threads and merged by addition,
/// so the result does not depend on the worker count.
FrequencyTable mc_sample_classical(const ContextNetwork& ctx, std::uint64_t trials,
                                   std::uint64_t seed, unsigned workers = 1);

struct PathDistribution {
  std::vector<double> probs;
  std::size_t paths = 0;
};

inline constexpr std::size_t kMaxEnumeratedPaths = 1'000'000;

/// Final-layer total probability by visiting every path and adding the
/// product of its f factors. Requires every layer at knowability 3;
/// kPathLimitExceeded above kMaxEnumeratedPaths paths.
PathDistribution enumerate_paths(const ContextNetwork& ctx);

/// CSV with columns alternative,count,freq,exact,sigma where sigma is the
/// binomial standard error sqrt(p (1 - p) / trials) at the exact p.
std::string frequency_csv(const FrequencyTable& table, const std::vector<double>& exact,
                          const std::vector<std::string>& labels);

}  // namespace knowctx

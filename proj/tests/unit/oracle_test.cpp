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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numeric>

#include "knowctx/engine.hpp"
#include "knowctx/oracle.hpp"
#include "test_support.hpp"

using namespace knowctx;
using knowctx::testing::error_code;
using Catch::Approx;

TEST_CASE("path enumeration", "[oracle]") {
  const PathDistribution mz = enumerate_paths(testing::mz_context(Knowability::kL3));
  CHECK(mz.paths == 4);
  CHECK(mz.probs[0] == Approx(0.5).margin(1e-15));
  CHECK(mz.probs[1] == Approx(0.5).margin(1e-15));

  const std::vector<LayerSpec> one{{2, Knowability::kL3}};
  const ContextNetwork single =
      build_context(one, {{Amplitude(0.6, 0), Amplitude(0, 0.8)}, {}}, ProbabilityRule::born());
  const PathDistribution s = enumerate_paths(single);
  CHECK(s.probs[0] == Approx(0.36));
  CHECK(s.probs[1] == Approx(0.64));
  CHECK(error_code([] { enumerate_paths(testing::mz_context(Knowability::kL2)); }) ==
        ErrorCode::kKnowabilityMismatch);
}

TEST_CASE("enumeration guard", "[oracle]") {
  Rng rng(31);
  const ContextNetwork big = testing::random_context(rng, {10, 10, 10, 10, 10, 10, 2});
  CHECK(error_code([&] { enumerate_paths(big); }) == ErrorCode::kPathLimitExceeded);
  const ContextNetwork ok = testing::random_context(rng, {10, 10, 10, 10, 10, 10});
  CHECK(enumerate_paths(ok).paths == 1'000'000);
}

TEST_CASE("classical chain equals path enumeration", "[oracle][property]") {
  Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::size_t> sizes(1 + rng.next() % 4);
    for (auto& s : sizes) s = 1 + rng.next() % 5;
    const ContextNetwork ctx = testing::random_context(rng, sizes);
    const auto exact = enumerate_paths(ctx).probs;
    const auto chain = eval_classical(ctx, sizes.size() - 1).probs;
    for (std::size_t j = 0; j < exact.size(); ++j) CHECK(chain[j] == Approx(exact[j]).margin(1e-12));
  }
}

TEST_CASE("sampler basics", "[oracle]") {
  const std::vector<LayerSpec> layers{{2, Knowability::kL3}, {2, Knowability::kL3}};
  const ContextNetwork forced =
      build_context(layers, {{1.0, 0.0}, {AmplitudeMatrix::identity(2)}}, ProbabilityRule::born());
  const FrequencyTable t = mc_sample_classical(forced, 1000, 0);
  CHECK(t.counts == std::vector<std::uint64_t>{1000, 0});
  CHECK(t.generator == "mt19937_64");

  const ContextNetwork biased = build_context(
      layers, {{Amplitude(0.6, 0), Amplitude(0, 0.8)}, {AmplitudeMatrix::identity(2)}},
      ProbabilityRule::born());
  const FrequencyTable b = mc_sample_classical(biased, 200000, 1);
  CHECK(std::accumulate(b.counts.begin(), b.counts.end(), std::uint64_t{0}) == b.trials);
  const double sigma = std::sqrt(0.36 * 0.64 / 200000);
  CHECK(std::abs(b.freq()[0] - 0.36) < 4 * sigma);

  CHECK(mc_sample_classical(biased, 0, 1).trials == 0);
}

TEST_CASE("sampler refuses what it cannot sample", "[oracle]") {
  CHECK(error_code([] { mc_sample_classical(testing::mz_context(Knowability::kL1), 10, 0); }) ==
        ErrorCode::kKnowabilityMismatch);
  CHECK(error_code([] { mc_sample_classical(testing::mz_context(Knowability::kL2), 10, 0); }) ==
        ErrorCode::kKnowabilityMismatch);
  const std::vector<LayerSpec> one{{2, Knowability::kL3}};
  const double a = std::pow(0.5, 0.25);
  const ContextNetwork quartic = build_context(one, {{a, a}, {}}, ProbabilityRule::gamma_modulus(2));
  CHECK(error_code([&] { mc_sample_classical(quartic, 10, 0); }) == ErrorCode::kUnsupportedRule);
}

TEST_CASE("sampler is independent of the worker count", "[oracle]") {
  Rng rng(33);
  const ContextNetwork ctx = testing::random_context(rng, {3, 4, 2});
  const std::uint64_t trials = 3 * kTrialBlock + 17;
  const FrequencyTable one = mc_sample_classical(ctx, trials, 9, 1);
  CHECK(mc_sample_classical(ctx, trials, 9, 3).counts == one.counts);
  CHECK(mc_sample_classical(ctx, trials, 9, 8).counts == one.counts);
  CHECK(mc_sample_classical(ctx, trials, 10, 1).counts != one.counts);
}

TEST_CASE("path sampling cannot reproduce interference", "[oracle]") {
  const FrequencyTable t = mc_sample_classical(testing::mz_context(Knowability::kL3), 1'000'000, 0, 4);
  const double interference = eval_interference(testing::mz_context(Knowability::kL1), 1).probs[0];
  const double sigma = std::sqrt(0.25 / 1e6);
  CHECK(std::abs(t.freq()[0] - 0.5) < 4 * sigma);
  CHECK(std::abs(std::abs(t.freq()[0] - interference) - 0.5) < 4 * sigma);
}

TEST_CASE("frequency csv", "[oracle]") {
  FrequencyTable t{{3, 1}, 4, 0, "mt19937_64"};
  const std::string csv = frequency_csv(t, {0.75, 0.25}, {"A1'", "A2'"});
  CHECK(csv.rfind("alternative,count,freq,exact,sigma\n", 0) == 0);
  CHECK(csv.find("A1',3,0.75,0.75,0.21650635094610965") != std::string::npos);
}

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

#include "knowctx/engine.hpp"
#include "test_support.hpp"

using namespace knowctx;
using knowctx::testing::error_code;
using Catch::Approx;

namespace {

void check_probs(const OutcomeDistribution& d, std::vector<double> expected, double tol = 1e-12) {
  REQUIRE(d.probs.size() == expected.size());
  for (std::size_t j = 0; j < expected.size(); ++j) CHECK(d.probs[j] == Approx(expected[j]).margin(tol));
}

}  // namespace

TEST_CASE("symmetric interferometer", "[engine]") {
  const ContextNetwork observed = testing::mz_context(Knowability::kL3);
  check_probs(eval_classical(observed, 1), {0.5, 0.5});
  check_probs(eval_interference(observed, 1), {1.0, 0.0});
  check_probs(eval_delayed(observed, 1), {0.5, 0.5});
  CHECK(divergence_check(observed) == Approx(0.5).margin(1e-12));
  CHECK(eval_classical(observed, 1).observable);
  CHECK(eval_classical(observed, 1).conditioning == "classical chain");
  check_probs(eval_classical(observed, 0), {0.5, 0.5});
}

TEST_CASE("deterministic and degenerate paths", "[engine]") {
  const std::vector<LayerSpec> layers{{2, Knowability::kL3}, {2, Knowability::kL3}};
  const ContextNetwork id =
      build_context(layers, {{1.0, 0.0}, {AmplitudeMatrix::identity(2)}}, ProbabilityRule::born());
  check_probs(eval_classical(id, 1), {1.0, 0.0});
  check_probs(eval_interference(id, 1), {1.0, 0.0});
  const double h = testing::kInvSqrt2;
  const ContextNetwork merge = build_context(
      layers, {{h, h}, {AmplitudeMatrix::from_rows({{1.0, 0.0}, {1.0, 0.0}})}},
      ProbabilityRule::born());
  check_probs(eval_classical(merge, 1), {1.0, 0.0});
  // Both paths end in A1' in phase: interference doubles the classical weight.
  check_probs(eval_interference(merge, 1), {2.0, 0.0});
  CHECK_FALSE(eval_interference(merge, 1).warnings.empty());
}

TEST_CASE("single nonzero path makes every composition agree", "[engine][property]") {
  Rng rng(8);
  const std::vector<LayerSpec> layers{{2, Knowability::kL3}, {3, Knowability::kL3}};
  for (int i = 0; i < 50; ++i) {
    const ContextNetwork ctx = build_context(
        layers, {{1.0, 0.0}, {testing::orthonormal_rows(rng, 2, 3)}}, ProbabilityRule::born());
    const auto c = eval_classical(ctx, 1).probs;
    const auto q = eval_interference(ctx, 1).probs;
    for (std::size_t j = 0; j < 3; ++j) CHECK(q[j] == Approx(c[j]).margin(1e-12));
  }
}

TEST_CASE("vanishing transition drops a path", "[engine]") {
  const std::vector<LayerSpec> layers{{2, Knowability::kL2}, {2, Knowability::kL3}};
  const double h = testing::kInvSqrt2;
  AmplitudeAssignment a{{Amplitude(0.6, 0), Amplitude(0, 0.8)},
                        {AmplitudeMatrix::from_rows({{Amplitude(h, 0), Amplitude(0, h)},
                                                     {Amplitude(0, 0), Amplitude(1, 0)}})}};
  const ContextNetwork ctx = build_context(layers, a, ProbabilityRule::born());
  const auto d = eval_delayed(ctx, 1);
  CHECK(d.probs[0] == Approx(0.36 * 0.5).margin(1e-12));
  CHECK(d.probs[1] == Approx(0.36 * 0.5 + 0.64).margin(1e-12));
}

TEST_CASE("composition guards", "[engine]") {
  const ContextNetwork l1 = testing::mz_context(Knowability::kL1);
  const ContextNetwork l2 = testing::mz_context(Knowability::kL2);
  CHECK(error_code([&] { eval_classical(l1, 1); }) == ErrorCode::kKnowabilityMismatch);
  CHECK(error_code([&] { eval_classical(l2, 1); }) == ErrorCode::kKnowabilityMismatch);
  CHECK(error_code([&] { eval_delayed(l1, 1); }) == ErrorCode::kKnowabilityMismatch);
  CHECK_NOTHROW(eval_delayed(l2, 1));
  CHECK(error_code([&] { eval_classical(l1, 2); }) == ErrorCode::kInvalidArgument);

  AmplitudeAssignment real;
  real.first_layer = {0.5, 0.5};
  real.transitions.push_back(AmplitudeMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}}));
  const std::vector<LayerSpec> layers{{2, Knowability::kL3}, {2, Knowability::kL3}};
  const ContextNetwork classical = build_context(layers, real, ProbabilityRule::classical());
  CHECK(error_code([&] { eval_interference(classical, 1); }) ==
        ErrorCode::kRuleContractViolation);
  check_probs(eval_classical(classical, 1), {0.5, 0.5});
  CHECK(divergence_check(classical) == 0.0);

  const std::vector<LayerSpec> one{{1, Knowability::kL3}};
  const ContextNetwork single = build_context(one, {{1.0}, {}}, ProbabilityRule::born());
  CHECK(error_code([&] { divergence_check(single); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("interference refuses a resolved upstream layer", "[engine]") {
  const ContextNetwork ctx = testing::mz_context(Knowability::kL3);
  const EpistemicState s = apply_event(initial_state(ctx), ctx, ContextEvent::observe(1, 0, 0));
  CHECK(error_code([&] { eval_interference(ctx, s, 1); }) == ErrorCode::kKnowabilityMismatch);
  check_probs(eval_interference(ctx, initial_state(ctx), 1), {1.0, 0.0});
}

TEST_CASE("automatic evaluation follows the state", "[engine]") {
  const ContextNetwork l3 = testing::mz_context(Knowability::kL3);
  EpistemicState s = initial_state(l3);
  check_probs(eval_auto(l3, s, 1), {0.5, 0.5});
  check_probs(eval_auto(l3, s, 0), {0.5, 0.5});
  s = apply_event(s, l3, ContextEvent::observe(1, 0, 1));
  const auto given = eval_auto(l3, s, 1);
  check_probs(given, {0.5, 0.5});
  CHECK(given.conditioning == "classical chain, given A2");
  check_probs(eval_auto(l3, s, 0), {0.0, 1.0});

  const ContextNetwork l1 = testing::mz_context(Knowability::kL1);
  check_probs(eval_auto(l1, initial_state(l1), 1), {1.0, 0.0});
  const auto l1_path = eval_auto(l1, initial_state(l1), 0);
  CHECK_FALSE(l1_path.observable);
  CHECK(l1_path.conditioning.rfind("propensities, non-observable", 0) == 0);

  const ContextNetwork l2 = testing::mz_context(Knowability::kL2);
  EpistemicState d = apply_event(initial_state(l2), l2, ContextEvent::attain(1, 0));
  check_probs(eval_auto(l2, d, 1), {0.5, 0.5});
  d = apply_event(d, l2, ContextEvent::erase(2, 0));
  check_probs(eval_auto(l2, d, 1), {1.0, 0.0});
}

TEST_CASE("delayed composition equals classical chaining", "[engine][property]") {
  Rng rng(9);
  const std::vector<std::vector<std::size_t>> shapes{{2, 2}, {3, 2}, {2, 3, 2}, {4, 1}, {1, 4}};
  for (const auto& sizes : shapes) {
    for (int i = 0; i < 100; ++i) {
      const ContextNetwork ctx = testing::random_context(rng, sizes);
      const std::size_t last = sizes.size() - 1;
      const auto c = eval_classical(ctx, last).probs;
      const auto d = eval_delayed(ctx, last).probs;
      double sum = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) {
        CHECK(d[j] == Approx(c[j]).margin(1e-12));
        sum += c[j];
      }
      CHECK(sum == Approx(1.0).margin(1e-12));
    }
  }
}

TEST_CASE("interference conserves probability only with orthonormal rows", "[engine][property]") {
  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    const std::vector<LayerSpec> layers{{3, Knowability::kL1}, {4, Knowability::kL3}};
    const ContextNetwork ctx = build_context(
        layers, {testing::random_unit_vector(rng, 3), {testing::orthonormal_rows(rng, 3, 4)}},
        ProbabilityRule::born());
    CHECK(eval_interference(ctx, 1).sum() == Approx(1.0).margin(1e-12));
    CHECK(eval_interference(ctx, 1).warnings.empty());
  }
  const double h = testing::kInvSqrt2;
  const std::vector<LayerSpec> layers{{2, Knowability::kL1}, {2, Knowability::kL3}};
  const ContextNetwork skew = build_context(
      layers, {{h, h}, {AmplitudeMatrix::from_rows({{1.0, 0.0}, {Amplitude(h, 0), Amplitude(h, 0)}})}},
      ProbabilityRule::born());
  CHECK(eval_interference(skew, 1).normalization_deviation > 0.1);
}

TEST_CASE("padded layers report how many alternatives are real", "[engine]") {
  const OutcomeDistribution d = eval_classical(testing::mz_context(Knowability::kL3), 1);
  CHECK(d.observed_count == 2);
}

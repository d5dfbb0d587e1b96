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

#include "knowctx/engine.hpp"
#include "knowctx/feasibility.hpp"
#include "knowctx/report_io.hpp"
#include "test_support.hpp"

using namespace knowctx;
using knowctx::testing::error_code;
using Catch::Approx;

namespace {

std::vector<double> pack(const AmplitudeMatrix& w) {
  std::vector<double> x;
  for (const Amplitude& c : w.data()) {
    x.push_back(c.real());
    x.push_back(c.imag());
  }
  return x;
}

void check_jacobian(const ConstraintSystem& sys, Rng& rng) {
  std::vector<double> x(sys.unknown_count());
  for (auto& v : x) v = rng.normal() * 0.5;
  const std::vector<double> jac = sys.jacobian(x);
  const double h = 1e-6;
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto xp = x;
    auto xm = x;
    xp[k] += h;
    xm[k] -= h;
    const auto rp = sys.residuals(xp);
    const auto rm = sys.residuals(xm);
    for (std::size_t i = 0; i < rp.size(); ++i) {
      const double fd = (rp[i] - rm[i]) / (2 * h);
      const double an = jac[i * x.size() + k];
      REQUIRE(std::abs(fd - an) < 1e-5 * (1 + std::abs(an)));
    }
  }
}

bool rows_orthonormal(const AmplitudeMatrix& w, double tol) {
  for (std::size_t a = 0; a < w.rows(); ++a) {
    for (std::size_t b = 0; b < w.rows(); ++b) {
      Amplitude d = 0.0;
      for (std::size_t k = 0; k < w.cols(); ++k) d += w(a, k) * std::conj(w(b, k));
      if (std::abs(d - (a == b ? 1.0 : 0.0)) > tol) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("residual counts", "[feasibility]") {
  const auto born = ProbabilityRule::born();
  const auto quartic = ProbabilityRule::gamma_modulus(2);
  const ConstraintSystem s22 = build_system({2, 2}, born);
  CHECK(s22.mode() == ConstraintSystem::Mode::kPolynomial);
  CHECK(s22.residual_count() == 4);
  CHECK(s22.unknown_count() == 8);
  const ConstraintSystem q22 = build_system({2, 2}, quartic);
  CHECK(q22.residual_count() == 10);
  CHECK(q22.unknown_count() == 8);
  std::size_t imaginary = 0;
  for (const auto& r : q22.residual_info()) {
    imaginary += r.kind == ConstraintSystem::Residual::Kind::kPolynomialImag;
  }
  CHECK(imaginary == 4);
  const ConstraintSystem s11 = build_system({1, 1}, born);
  REQUIRE(s11.residual_count() == 1);
  CHECK(s11.residuals(std::vector<double>{0.6, 0.8})[0] == Approx(0.0).margin(1e-15));
  CHECK(s11.residuals(std::vector<double>{2.0, 0.0})[0] == Approx(3.0));
  for (std::size_t m = 1; m <= 5; ++m) {
    CHECK(build_system({m, 3}, born).residual_count() == m + m * (m - 1));
  }
}

TEST_CASE("row norms come first and are named", "[feasibility]") {
  const ConstraintSystem s = build_system({3, 2}, ProbabilityRule::born());
  CHECK(s.residual_info()[0].name == "row_norm[1]");
  CHECK(s.residual_info()[2].name == "row_norm[3]");
  CHECK(s.residual_info()[3].kind == ConstraintSystem::Residual::Kind::kPolynomialReal);
}

TEST_CASE("orthogonality residual is the row inner product", "[feasibility][property]") {
  const ConstraintSystem s = build_system({2, 2}, ProbabilityRule::born());
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const AmplitudeMatrix w = testing::random_rows(rng, 2, 2);
    const auto r = s.residuals(pack(w));
    Amplitude inner = 0.0;
    for (std::size_t k = 0; k < 2; ++k) inner += w(0, k) * std::conj(w(1, k));
    CHECK(std::hypot(r[2], r[3]) == Approx(std::abs(inner)).margin(1e-12));
    CHECK(std::abs(r[0]) < 1e-12);
    CHECK(std::abs(r[1]) < 1e-12);
  }
}

TEST_CASE("analytic jacobians", "[feasibility]") {
  Rng rng(22);
  check_jacobian(build_system({2, 2}, ProbabilityRule::born()), rng);
  check_jacobian(build_system({2, 2}, ProbabilityRule::gamma_modulus(2)), rng);
  check_jacobian(build_system({3, 2}, ProbabilityRule::gamma_modulus(3)), rng);
  check_jacobian(build_system({2, 3}, ProbabilityRule::gamma_modulus(1.5), 4), rng);
  check_jacobian(build_system({2, 2}, ProbabilityRule::gamma_modulus(0.75), 5), rng);
}

TEST_CASE("sampled mode for non-integer exponents", "[feasibility]") {
  const ConstraintSystem s = build_system({2, 3}, ProbabilityRule::gamma_modulus(1.5), 9);
  CHECK(s.mode() == ConstraintSystem::Mode::kSampled);
  CHECK(s.residual_count() == 2 + 4 * 2 * 3 + 4);
  CHECK(s.polynomials().empty());
  const DofAccount d = dof_count({2, 3}, ProbabilityRule::gamma_modulus(1.5));
  CHECK_FALSE(d.conditions);
  CHECK_FALSE(d.available);
  CHECK(d.deficit() == 0);
}

TEST_CASE("rule and shape preconditions", "[feasibility]") {
  CHECK(error_code([] { build_system({2, 2}, ProbabilityRule::classical()); }) ==
        ErrorCode::kUnsupportedRule);
  CHECK(error_code([] { dof_count({2, 2}, ProbabilityRule::classical()); }) ==
        ErrorCode::kUnsupportedRule);
  CHECK(error_code([] { build_system({0, 2}, ProbabilityRule::born()); }) ==
        ErrorCode::kInvalidArgument);
  const ConstraintSystem s = build_system({2, 2}, ProbabilityRule::born());
  CHECK(error_code([&] { solve(s, 0, 0); }) == ErrorCode::kInvalidArgument);
  CHECK(error_code([&] { s.residuals(std::vector<double>(3)); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("degree-of-freedom accounts", "[feasibility]") {
  const DofAccount b22 = dof_count({2, 2}, ProbabilityRule::born());
  CHECK(b22.available == 4);
  CHECK(b22.required == 2);
  CHECK(b22.first_layer_available == 3);
  CHECK(b22.first_layer_required == 1);
  const DofAccount q22 = dof_count({2, 2}, ProbabilityRule::gamma_modulus(2));
  CHECK(q22.unknowns == 8);
  CHECK(q22.conditions == 10);
  CHECK(q22.available == -2);
  CHECK(q22.required == 2);
  CHECK(q22.deficit() == 4);
}

TEST_CASE("closed-form condition count matches the generated system", "[feasibility][property]") {
  for (std::size_t m = 1; m <= 5; ++m) {
    for (std::size_t mp = 1; mp <= 5; ++mp) {
      const ShapeSpec shape{m, mp};
      const DofAccount d = dof_count(shape, ProbabilityRule::born());
      const long mm = static_cast<long>(m);
      CHECK(*d.available == 2 * mm * static_cast<long>(mp) - mm * (mm - 1) - mm);
      CHECK(*d.conditions == static_cast<long>(build_system(shape, ProbabilityRule::born()).residual_count()));
      if (m <= 3 && mp <= 3) {
        const auto q = ProbabilityRule::gamma_modulus(2);
        CHECK(*dof_count(shape, q).conditions ==
              static_cast<long>(build_system(shape, q).residual_count()));
      }
    }
  }
}

TEST_CASE("admissibility bound", "[feasibility]") {
  CHECK(born_admissible({2, 3}));
  CHECK(born_admissible({3, 2}));
  CHECK_FALSE(born_admissible({4, 2}));
  CHECK(born_admissible({4, 3}));
  CHECK(born_admissible({1, 1}));
}

TEST_CASE("born solutions on small shapes", "[feasibility]") {
  const FeasibilityReport r = solve(build_system({2, 2}, ProbabilityRule::born()), 32, 0);
  REQUIRE(r.verdict == Verdict::kFeasible);
  CHECK(r.best_residual <= 1e-9);
  REQUIRE(r.witness);
  CHECK(rows_orthonormal(*r.witness, 1e-8));
  CHECK_FALSE(r.deterministic_witness);
  CHECK(r.generator == "mt19937_64");

  const FeasibilityReport r33 = solve(build_system({3, 3}, ProbabilityRule::born()), 32, 0);
  REQUIRE(r33.verdict == Verdict::kFeasible);
  CHECK(rows_orthonormal(*r33.witness, 1e-8));
  CHECK(r33.jacobian_rank == 9u);
}

// Orthonormal rows need M' >= M. The counting bound M' >= M - 1 also admits
// M' = M - 1, where the residual stays bounded away from zero.
TEST_CASE("born feasibility needs as many columns as rows", "[feasibility]") {
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t mp = 1; mp <= 4; ++mp) {
      const FeasibilityReport r = solve(build_system({m, mp}, ProbabilityRule::born()), 8, 0);
      CHECK((r.verdict == Verdict::kFeasible) == (mp >= m));
      if (mp < m) {
        CHECK(r.best_residual > 1e-3);
        CHECK(r.refutation_certified);
      }
    }
  }
}

TEST_CASE("solver is deterministic for a seed", "[feasibility]") {
  const ConstraintSystem s = build_system({2, 3}, ProbabilityRule::gamma_modulus(2));
  const FeasibilityReport a = solve(s, 16, 5);
  const FeasibilityReport b = solve(s, 16, 5);
  CHECK(to_json(a) == to_json(b));
  const FeasibilityReport c = solve(s, 16, 6);
  CHECK(c.seed == 6);
}

TEST_CASE("quartic rule only reaches deterministic transitions", "[feasibility]") {
  const FeasibilityReport r = assess({2, 2}, ProbabilityRule::gamma_modulus(2), 50, 0);
  REQUIRE(r.dof);
  CHECK(r.dof->deficit() == 4);
  if (r.verdict == Verdict::kFeasible) {
    CHECK(r.deterministic_witness);
    CHECK(*r.jacobian_rank < 8u);
  }
}

TEST_CASE("inadmissible shapes short-circuit", "[feasibility]") {
  const FeasibilityReport r = assess({4, 2}, ProbabilityRule::born(), 32, 0);
  CHECK(r.verdict == Verdict::kAnalyticallyInadmissible);
  CHECK(r.restarts == 0);
  REQUIRE(r.dof);
  CHECK(r.dof->required == 4);
  CHECK(std::isnan(r.best_residual));
  CHECK_FALSE(r.reason.empty());
  // Other rules are always attacked numerically.
  CHECK(assess({4, 2}, ProbabilityRule::gamma_modulus(2), 2, 0).verdict !=
        Verdict::kAnalyticallyInadmissible);
}

TEST_CASE("real-argument exclusion", "[feasibility]") {
  const DofAccount r = real_rule_exclusion({2, 2});
  CHECK(r.unknowns == 6);
  CHECK(r.conditions == 4);
  CHECK(r.available == 2);
  CHECK(r.required == 3);
  CHECK(r.deficit() == 1);
  const DofAccount t = real_rule_exclusion({1, 1});
  CHECK(t.available == 0);
  CHECK(t.required == 0);
  CHECK(error_code([] { real_rule_exclusion({2, 3}); }) == ErrorCode::kUnsupportedShape);
  const DofAccount c = complex_rule_accounting({2, 2});
  CHECK(c.deficit() == 0);
  CHECK(c.required == 3);
}

TEST_CASE("hypothetical padding", "[feasibility]") {
  Rng rng(23);
  const ContextNetwork ctx = testing::random_context(rng, {4, 2});
  const ContextNetwork padded = pad_hypothetical(ctx, 4);
  CHECK(padded.layer(1).size() == 4);
  CHECK(padded.layer(1).padded_from == 2u);
  CHECK(padded.layer(1).labels[2] == "~A3'");
  CHECK(born_admissible({4, 4}));
  const OutcomeDistribution d = eval_classical(padded, 1);
  CHECK(d.observed_count == 2);
  CHECK(d.probs[2] == 0.0);
  CHECK(pad_hypothetical(padded, 4).layer(1).padded_from == 2u);
  CHECK(pad_hypothetical(ctx, 3).layer(1).size() == 3);

  const ContextNetwork same = testing::mz_context(Knowability::kL3);
  CHECK(pad_hypothetical(same, 2).layer(1).labels == same.layer(1).labels);
  CHECK_FALSE(pad_hypothetical(same, 2).layer(1).padded_from);

  const ContextNetwork wide = testing::random_context(rng, {5, 2});
  CHECK(error_code([&] { pad_hypothetical(wide, 3); }) == ErrorCode::kPaddingInsufficient);
  CHECK(error_code([&] { pad_hypothetical(ctx, 1); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("sampled independence", "[feasibility]") {
  Rng rng(24);
  const AmplitudeMatrix u = testing::orthonormal_rows(rng, 3, 4);
  CHECK(sampled_independence_check({3, 4}, ProbabilityRule::born(), u, 10000, 1) < 1e-9);

  const AmplitudeMatrix same = AmplitudeMatrix::from_rows({{1.0, 0.0}, {1.0, 0.0}});
  CHECK(sampled_independence_check({2, 2}, ProbabilityRule::born(), same, 1000, 1) > 0.5);

  // A non-deterministic quartic witness, rows normalized under |x|^4.
  const double a = std::pow(0.5, 0.25);
  const AmplitudeMatrix q =
      AmplitudeMatrix::from_rows({{Amplitude(a, 0), Amplitude(0, a)}, {Amplitude(a, 0), Amplitude(0, -a)}});
  CHECK(sampled_independence_check({2, 2}, ProbabilityRule::gamma_modulus(2), q, 1000, 1) > 0.1);

  CHECK(error_code([&] {
          sampled_independence_check({2, 2}, ProbabilityRule::gamma_modulus(2), u, 10, 1);
        }) == ErrorCode::kShapeMismatch);
  CHECK(error_code([&] {
          sampled_independence_check({2, 2}, ProbabilityRule::gamma_modulus(2),
                                     AmplitudeMatrix::from_rows({{0.6, 0.8}, {0.8, 0.6}}), 10, 1);
        }) == ErrorCode::kNormalizationViolation);
}

TEST_CASE("reports render", "[feasibility]") {
  const FeasibilityReport r = assess({2, 2}, ProbabilityRule::born(), 4, 0);
  const std::string table = render_table(r);
  CHECK(table.find("Feasible") != std::string::npos);
  CHECK(table.find("witness") != std::string::npos);
  const std::string json = to_json(r);
  CHECK(json.find("\"verdict\": \"Feasible\"") != std::string::npos);
  CHECK(format_short(1.0 / 3.0) == "0.333333");
  CHECK(format_full(0.1) == "0.1");
  CHECK(unpack_amplitudes({1, 2}, std::vector<double>{1, 2, 3, 4})(0, 1) == Amplitude(3, 4));
}

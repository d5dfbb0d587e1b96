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

#include "knowctx/context.hpp"
#include "knowctx/polynomial.hpp"
#include "knowctx/rule.hpp"

namespace knowctx {

/// Sizes of two consecutive complete sets: M alternatives followed by M'.
struct ShapeSpec {
  std::size_t m = 1;
  std::size_t m_prime = 1;

  friend bool operator==(const ShapeSpec&, const ShapeSpec&) = default;
};

/// Free real parameters against the independent propensities an experimenter
/// must be able to set. `conditions` and `available` are empty when the rule
/// is not polynomial and the number of conditions is unbounded.
struct DofAccount {
  long unknowns = 0;
  std::optional<long> conditions;
  std::optional<long> available;
  long required = 0;
  long first_layer_unknowns = 0;
  long first_layer_conditions = 0;
  long first_layer_available = 0;
  long first_layer_required = 0;

  /// required - available when positive, else 0. Unknown availability counts
  /// as no deficit.
  long deficit() const noexcept;

  friend bool operator==(const DofAccount&, const DofAccount&) = default;
};

/// Real residual equations over the transition amplitudes of a shape.
///
/// Unknowns are laid out as x[2 (j M' + j')] = Re c_{jj'} and
/// x[2 (j M' + j') + 1] = Im c_{jj'}.
///
/// For integer gamma the conditions come from expanding
/// sum_{j'} f(sum_j c_j c_{jj'}) as a polynomial in the first-layer amplitudes
/// and matching coefficients against sum_j f(c_j): the pure |c_j|^(2 gamma)
/// coefficients give the row norms, every other coefficient must vanish.
/// Conjugate coefficient pairs are kept once, scaled to unit leading
/// coefficient, and each contributes its real and imaginary part. For other
/// gamma the universal condition is imposed on a fixed set of sampled
/// first-layer vectors instead.
class ConstraintSystem {
 public:
  enum class Mode { kPolynomial, kSampled };

  struct Residual {
    enum class Kind { kPolynomialReal, kPolynomialImag, kRowNorm, kSample };
    Kind kind;
    std::size_t index;  // polynomial, row or sample index
    std::string name;
  };

  ShapeSpec shape() const noexcept { return shape_; }
  const ProbabilityRule& rule() const noexcept { return rule_; }
  Mode mode() const noexcept { return mode_; }

  std::size_t unknown_count() const noexcept { return 2 * shape_.m * shape_.m_prime; }
  std::size_t residual_count() const noexcept { return residuals_.size(); }
  const std::vector<Residual>& residual_info() const noexcept { return residuals_; }
  /// Coefficient polynomials in the transition amplitudes (polynomial mode).
  const std::vector<Polynomial>& polynomials() const noexcept { return polynomials_; }

  std::vector<double> residuals(std::span<const double> x) const;
  /// Row-major residual_count() x unknown_count() Jacobian.
  std::vector<double> jacobian(std::span<const double> x) const;

 private:
  friend ConstraintSystem build_system(ShapeSpec, ProbabilityRule, std::uint64_t);

  ShapeSpec shape_;
  ProbabilityRule rule_ = ProbabilityRule::born();
  Mode mode_ = Mode::kPolynomial;
  std::vector<Residual> residuals_;
  std::vector<Polynomial> polynomials_;
  std::vector<double> constants_;  // subtracted from polynomial residuals
  std::vector<std::vector<Amplitude>> samples_;
};

/// Errors: kUnsupportedRule for the classical rule, kInvalidArgument for an
/// empty shape. `sample_seed` only matters for non-integer gamma.
ConstraintSystem build_system(ShapeSpec shape, ProbabilityRule rule,
                              std::uint64_t sample_seed = 0);

DofAccount dof_count(ShapeSpec shape, ProbabilityRule rule);

/// Closed-form admissibility of Born's rule for a shape: M' >= M - 1.
bool born_admissible(ShapeSpec shape) noexcept;

enum class Verdict { kFeasible, kNoSolutionFound, kAnalyticallyInadmissible };
std::string_view to_string(Verdict v) noexcept;

struct SolverOptions {
  std::size_t max_iterations = 500;
  double feasible_tolerance = 1e-9;
  double refutation_threshold = 1e-3;
};

struct FeasibilityReport {
  Verdict verdict = Verdict::kNoSolutionFound;
  ShapeSpec shape;
  ProbabilityRule rule = ProbabilityRule::born();
  /// Euclidean norm of the residual vector at the best point found.
  double best_residual = 0.0;
  std::optional<AmplitudeMatrix> witness;
  std::size_t restarts = 0;
  std::size_t best_restart = 0;
  /// Restarts that reached the feasibility tolerance.
  std::size_t converged_restarts = 0;
  /// NoSolutionFound with every restart at or above the refutation threshold.
  bool refutation_certified = false;
  /// Numerical rank of the residual Jacobian at the reported point.
  std::optional<std::size_t> jacobian_rank;
  /// Every f(c_{jj'}) of the witness is 0 or 1 (within 1e-6): the solution
  /// only realizes deterministic transitions.
  bool deterministic_witness = false;
  std::optional<DofAccount> dof;
  std::string reason;
  std::size_t residual_count = 0;
  std::size_t unknown_count = 0;
  std::uint64_t seed = 0;
  std::string generator;
};

/// Multi-start damped least squares (Levenberg-Marquardt) on the stacked
/// residual vector. Restart i starts from complex Gaussian entries drawn with
/// derive_seed(seed, i), rows rescaled to unit norm under the rule. Restarts
/// are independent and reduced in index order: smallest residual wins, ties
/// go to the lowest index. Deterministic for a given seed.
FeasibilityReport solve(const ConstraintSystem& system, std::size_t restarts,
                        std::uint64_t seed, const SolverOptions& options = {});

/// Short-circuits to AnalyticallyInadmissible when Born's rule fails the
/// closed-form bound, otherwise builds and solves the system. The DOF account
/// is attached in both cases when it exists.
FeasibilityReport assess(ShapeSpec shape, ProbabilityRule rule, std::size_t restarts,
                         std::uint64_t seed, const SolverOptions& options = {});

/// Counting for real-valued amplitudes on the (2,2) context, and the
/// degenerate (1,1) one: first-layer and transition amplitudes against the
/// three classical normalizations plus the knowability-1 normalization.
/// Errors: kUnsupportedShape for other shapes.
DofAccount real_rule_exclusion(ShapeSpec shape);

/// The same context counted with complex amplitudes under Born's rule.
DofAccount complex_rule_accounting(ShapeSpec shape);

/// Appends hypothetical alternatives to the final layer until it has
/// `target_m_prime` entries. Their transition amplitudes start at zero, which
/// keeps every row normalized; they are the unknowns a feasibility run solves
/// for. Errors: kPaddingInsufficient if the padded shape still fails
/// born_admissible, kInvalidArgument if the target shrinks the layer or the
/// context has a single layer.
ContextNetwork pad_hypothetical(const ContextNetwork& ctx, std::size_t target_m_prime);

/// Draws `samples` first-layer vectors normalized under the rule and returns
/// max |sum_{j'} f(sum_j c_j w_{jj'}) - 1|. Throws kNormalizationViolation when
/// a witness row is not normalized under the rule.
double sampled_independence_check(ShapeSpec shape, ProbabilityRule rule,
                                  const AmplitudeMatrix& witness, std::size_t samples,
                                  std::uint64_t seed);

/// Unpacks a solver vector into an M x M' amplitude matrix.
AmplitudeMatrix unpack_amplitudes(ShapeSpec shape, std::span<const double> x);

}  // namespace knowctx

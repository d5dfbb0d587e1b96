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

#include <complex>
#include <optional>
#include <string>

namespace knowctx {

using Amplitude = std::complex<double>;

/// Candidate rule f mapping a propensity representation to a probability.
///
/// Two families exist. `Classical` is the identity on nonnegative real
/// propensities; it cannot produce interference and is kept so the rest of
/// the library can demonstrate why it is excluded. `GammaModulus(gamma)`
/// evaluates f(x) = |x|^(2 gamma) through the modulus only, so no branch cut
/// is involved for non-integer gamma. gamma = 1 is Born's rule.
///
/// f(xy) = f(x) f(y) holds for every member of both families.
class ProbabilityRule {
 public:
  enum class Kind { kClassical, kGammaModulus };

  static ProbabilityRule classical() noexcept;
  /// Throws Error(kInvalidArgument) unless gamma is finite and positive.
  static ProbabilityRule gamma_modulus(double gamma);
  static ProbabilityRule born() noexcept;

  Kind kind() const noexcept { return kind_; }
  bool is_classical() const noexcept { return kind_ == Kind::kClassical; }
  bool is_born() const noexcept {
    return kind_ == Kind::kGammaModulus && gamma_ == 1.0;
  }
  /// Exponent gamma; 1 for the classical rule.
  double gamma() const noexcept { return gamma_; }

  /// gamma as an integer when f is a polynomial in (x, conj(x)), i.e. when
  /// gamma is a positive integer.
  std::optional<int> polynomial_order() const noexcept;

  double operator()(Amplitude x) const noexcept;

  /// "classical", "|x|^2", "|x|^3", "|x|^2.5", ...
  std::string name() const;

  friend bool operator==(const ProbabilityRule&, const ProbabilityRule&) = default;

 private:
  ProbabilityRule(Kind kind, double gamma) noexcept : kind_(kind), gamma_(gamma) {}

  Kind kind_;
  double gamma_;
};

}  // namespace knowctx

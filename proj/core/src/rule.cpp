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

#include "knowctx/rule.hpp"

#include <cmath>
#include <sstream>

#include "knowctx/errors.hpp"

namespace knowctx {

ProbabilityRule ProbabilityRule::classical() noexcept {
  return ProbabilityRule(Kind::kClassical, 1.0);
}

ProbabilityRule ProbabilityRule::gamma_modulus(double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "gamma must be a positive finite number");
  }
  return ProbabilityRule(Kind::kGammaModulus, gamma);
}

ProbabilityRule ProbabilityRule::born() noexcept {
  return ProbabilityRule(Kind::kGammaModulus, 1.0);
}

std::optional<int> ProbabilityRule::polynomial_order() const noexcept {
  if (kind_ != Kind::kGammaModulus) return std::nullopt;
  if (gamma_ != std::floor(gamma_) || gamma_ > 64.0) return std::nullopt;
  return static_cast<int>(gamma_);
}

double ProbabilityRule::operator()(Amplitude x) const noexcept {
  if (kind_ == Kind::kClassical) return x.real();
  if (gamma_ == 1.0) return std::norm(x);
  return std::pow(std::norm(x), gamma_);
}

std::string ProbabilityRule::name() const {
  if (kind_ == Kind::kClassical) return "classical";
  std::ostringstream out;
  out << "|x|^" << 2.0 * gamma_;
  return out.str();
}

}  // namespace knowctx

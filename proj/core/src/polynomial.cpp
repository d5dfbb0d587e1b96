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

#include "knowctx/polynomial.hpp"

#include <cmath>

#include "knowctx/errors.hpp"

namespace knowctx {
namespace {

std::complex<double> ipow(std::complex<double> x, unsigned n) {
  std::complex<double> r = 1.0;
  for (unsigned i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

Polynomial Polynomial::constant(std::size_t variables, std::complex<double> value) {
  Polynomial p(variables);
  p.add_term(Exponents(2 * variables, 0), value);
  return p;
}

Polynomial Polynomial::variable(std::size_t variables, std::size_t k, bool conjugate) {
  Polynomial p(variables);
  Exponents e(2 * variables, 0);
  e.at(2 * k + (conjugate ? 1 : 0)) = 1;
  p.add_term(e, 1.0);
  return p;
}

void Polynomial::add_term(const Exponents& e, std::complex<double> coeff) {
  if (e.size() != 2 * variables_) {
    throw Error(ErrorCode::kInvalidArgument, "monomial arity mismatch");
  }
  auto [it, inserted] = terms_.emplace(e, coeff);
  if (!inserted) it->second += coeff;
  if (it->second == std::complex<double>{}) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (other.variables_ != variables_) {
    throw Error(ErrorCode::kInvalidArgument, "polynomial variable sets differ");
  }
  Polynomial out(variables_);
  Exponents e(2 * variables_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial out = constant(variables_, 1.0);
  for (unsigned i = 0; i < n; ++i) out = out * *this;
  return out;
}

Polynomial Polynomial::scaled(std::complex<double> factor) const {
  Polynomial out(variables_);
  for (const auto& [e, c] : terms_) out.add_term(e, c * factor);
  return out;
}

std::complex<double> Polynomial::evaluate(const std::vector<std::complex<double>>& z) const {
  std::complex<double> total = 0.0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> m = c;
    for (std::size_t k = 0; k < variables_; ++k) {
      if (e[2 * k]) m *= ipow(z[k], e[2 * k]);
      if (e[2 * k + 1]) m *= ipow(std::conj(z[k]), e[2 * k + 1]);
    }
    total += m;
  }
  return total;
}

void Polynomial::gradient(const std::vector<std::complex<double>>& z,
                          std::vector<std::complex<double>>& d_z,
                          std::vector<std::complex<double>>& d_conj) const {
  d_z.assign(variables_, 0.0);
  d_conj.assign(variables_, 0.0);
  for (const auto& [e, c] : terms_) {
    for (std::size_t slot = 0; slot < 2 * variables_; ++slot) {
      if (e[slot] == 0) continue;
      std::complex<double> m = c * static_cast<double>(e[slot]);
      for (std::size_t s = 0; s < 2 * variables_; ++s) {
        const unsigned power = s == slot ? e[s] - 1u : e[s];
        if (power == 0) continue;
        const std::complex<double> base = (s % 2 == 0) ? z[s / 2] : std::conj(z[s / 2]);
        m *= ipow(base, power);
      }
      (slot % 2 == 0 ? d_z : d_conj)[slot / 2] += m;
    }
  }
}

}  // namespace knowctx

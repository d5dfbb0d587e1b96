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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace knowctx {

/// Sparse polynomial in complex variables z_k and their conjugates, treated
/// as independent symbols. A monomial is an exponent vector laid out as
/// [z_0, conj(z_0), z_1, conj(z_1), ...].
class Polynomial {
 public:
  using Exponents = std::vector<std::uint8_t>;

  explicit Polynomial(std::size_t variables = 0) : variables_(variables) {}

  static Polynomial constant(std::size_t variables, std::complex<double> value);
  /// z_k, or conj(z_k) when `conjugate` is set.
  static Polynomial variable(std::size_t variables, std::size_t k, bool conjugate = false);

  std::size_t variable_count() const noexcept { return variables_; }
  const std::map<Exponents, std::complex<double>>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  void add_term(const Exponents& e, std::complex<double> coeff);
  Polynomial& operator+=(const Polynomial& other);
  Polynomial operator*(const Polynomial& other) const;
  Polynomial pow(unsigned n) const;
  Polynomial scaled(std::complex<double> factor) const;

  std::complex<double> evaluate(const std::vector<std::complex<double>>& z) const;
  /// Partial derivatives with respect to z_k and conj(z_k) (Wirtinger
  /// derivatives; conj(z_k) held fixed in the first and vice versa).
  void gradient(const std::vector<std::complex<double>>& z,
                std::vector<std::complex<double>>& d_z,
                std::vector<std::complex<double>>& d_conj) const;

 private:
  std::size_t variables_;
  std::map<Exponents, std::complex<double>> terms_;
};

}  // namespace knowctx

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

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "knowctx/context.hpp"
#include "knowctx/errors.hpp"
#include "knowctx/random.hpp"
#include "knowctx/scenario.hpp"

namespace knowctx::testing {

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

/// Code of the knowctx::Error thrown by `f`, or nullopt when it returns.
inline std::optional<ErrorCode> error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// c = (1/sqrt2, 1/sqrt2), rows (1/sqrt2, i/sqrt2) and (1/sqrt2, -i/sqrt2).
inline AmplitudeAssignment symmetric_mz() {
  const double h = kInvSqrt2;
  AmplitudeAssignment a;
  a.first_layer = {h, h};
  a.transitions.push_back(AmplitudeMatrix::from_rows(
      {{Amplitude(h, 0), Amplitude(0, h)}, {Amplitude(h, 0), Amplitude(0, -h)}}));
  return a;
}

inline ContextNetwork mz_context(Knowability path, ProbabilityRule rule = ProbabilityRule::born()) {
  const std::vector<LayerSpec> layers{{2, path}, {2, Knowability::kL3}};
  return build_context(layers, symmetric_mz(), rule, "mz");
}

inline std::vector<Amplitude> random_unit_vector(Rng& rng, std::size_t n) {
  std::vector<Amplitude> v(n);
  double s = 0.0;
  for (auto& x : v) {
    x = rng.complex_normal();
    s += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

/// Rows normalized independently: a valid transition matrix that is
/// generally not unitary.
inline AmplitudeMatrix random_rows(Rng& rng, std::size_t m, std::size_t mp) {
  AmplitudeMatrix t(m, mp);
  for (std::size_t j = 0; j < m; ++j) {
    const auto row = random_unit_vector(rng, mp);
    for (std::size_t k = 0; k < mp; ++k) t(j, k) = row[k];
  }
  return t;
}

/// m orthonormal rows in C^mp by Gram-Schmidt (m <= mp).
inline AmplitudeMatrix orthonormal_rows(Rng& rng, std::size_t m, std::size_t mp) {
  std::vector<std::vector<Amplitude>> rows;
  while (rows.size() < m) {
    std::vector<Amplitude> v(mp);
    for (auto& x : v) x = rng.complex_normal();
    for (const auto& r : rows) {
      Amplitude d = 0.0;
      for (std::size_t k = 0; k < mp; ++k) d += std::conj(r[k]) * v[k];
      for (std::size_t k = 0; k < mp; ++k) v[k] -= d * r[k];
    }
    double n = 0.0;
    for (const auto& x : v) n += std::norm(x);
    if (n < 1e-6) continue;
    for (auto& x : v) x /= std::sqrt(n);
    rows.push_back(std::move(v));
  }
  return AmplitudeMatrix::from_rows(rows);
}

/// Random Born-normalized context with the given layer sizes, every layer at
/// `level` except the last, which is at knowability 3.
inline ContextNetwork random_context(Rng& rng, const std::vector<std::size_t>& sizes,
                                     Knowability level = Knowability::kL3) {
  std::vector<LayerSpec> layers;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    layers.push_back({sizes[k], k + 1 == sizes.size() ? Knowability::kL3 : level});
  }
  AmplitudeAssignment a;
  a.first_layer = random_unit_vector(rng, sizes[0]);
  for (std::size_t k = 1; k < sizes.size(); ++k) {
    a.transitions.push_back(random_rows(rng, sizes[k - 1], sizes[k]));
  }
  return build_context(layers, a, ProbabilityRule::born(), "random");
}

/// parse(dump(s)) for round-trip checks.
inline Scenario round_trip(const Scenario& s) { return parse_scenario(dump_scenario(s)); }

}  // namespace knowctx::testing

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
#include <random>
#include <string_view>

namespace knowctx {

/// Seedable generator whose output is identical on every platform.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The distributions from <random> are not, so the conversions to
/// uniform and normal variates are done here.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller; one variate per call.
  double normal();
  /// Real and imaginary parts independent N(0, 1/2), so E|z|^2 = 1.
  std::complex<double> complex_normal();

 private:
  std::mt19937_64 engine_;
};

/// Seed for an independent stream (seed, index): restarts, shards, ...
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace knowctx

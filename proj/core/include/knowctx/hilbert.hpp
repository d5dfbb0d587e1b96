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
#include <string>
#include <utility>
#include <vector>

#include "knowctx/context.hpp"
#include "knowctx/epistemic_state.hpp"

namespace knowctx {

/// Coordinates in a fixed orthonormal basis, one basis vector per label.
struct StateVector {
  std::vector<Amplitude> coords;
  std::vector<std::string> basis;

  std::size_t dim() const noexcept { return coords.size(); }
  double norm() const;

  friend bool operator==(const StateVector&, const StateVector&) = default;
};

/// <a|b>, antilinear in the first argument. Throws kShapeMismatch on a
/// dimension mismatch.
Amplitude inner(const StateVector& a, const StateVector& b);

/// |j> in a basis with the given labels.
StateVector basis_vector(const std::vector<std::string>& basis, std::size_t j);

/// Superposition sum_j a_j |j> of the coherent amplitudes into layer k,
/// labeled by that layer's alternatives. Throws kNormalizationViolation when
/// the squared norm is off by more than 1e-9.
StateVector to_state_vector(const ContextNetwork& ctx, std::size_t layer);

struct Projection {
  StateVector state;
  double weight = 0.0;
};

/// Normalized |j> (0-based) with weight |a_j|^2, the observation of
/// alternative j. Throws kZeroAmplitudeProjection when |a_j| < 1e-12 and
/// kInvalidArgument for an index out of range.
Projection project(const StateVector& state, std::size_t j);

/// Product basis |j> (x) |j'> of a two-layer context, ordered j * M' + j'.
struct TensorBasis {
  std::size_t m = 0;
  std::size_t m_prime = 0;
  std::vector<std::string> labels;

  std::size_t dim() const noexcept { return labels.size(); }
  std::size_t index(std::size_t j, std::size_t j_prime) const { return j * m_prime + j_prime; }
};

/// Refuses with kNotSimultaneouslyKnowable unless the caller asserts that the
/// two attributes are simultaneously knowable; kUnsupportedLayerCount unless
/// the context has exactly two layers.
TensorBasis tensor_context(const ContextNetwork& ctx, bool simultaneously_knowable);

/// Basis vector for a state whose two layers are both resolved. Collapsed or
/// unresolved brackets have no translation here and give kInvalidArgument.
StateVector resolved_product_state(const TensorBasis& basis, const EpistemicState& state);

/// {"dim": n, "basis": [...], "coords": [[re, im], ...]}
std::string to_json(const StateVector& state, int indent = 2);

}  // namespace knowctx

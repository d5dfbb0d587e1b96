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

#include "knowctx/hilbert.hpp"

#include <cmath>
#include <sstream>
#include <variant>

#include "json.hpp"
#include "knowctx/engine.hpp"
#include "knowctx/errors.hpp"

namespace knowctx {
namespace {

std::string ket(const std::string& label) { return "|" + label + ">"; }

}  // namespace

double StateVector::norm() const {
  double s = 0.0;
  for (const Amplitude& a : coords) s += std::norm(a);
  return std::sqrt(s);
}

Amplitude inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kShapeMismatch, "dimensions differ");
  Amplitude s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.coords[i]) * b.coords[i];
  return s;
}

StateVector basis_vector(const std::vector<std::string>& basis, std::size_t j) {
  if (j >= basis.size()) throw Error(ErrorCode::kInvalidArgument, "basis index out of range");
  StateVector v{std::vector<Amplitude>(basis.size()), basis};
  v.coords[j] = 1.0;
  return v;
}

StateVector to_state_vector(const ContextNetwork& ctx, std::size_t layer) {
  StateVector v;
  v.coords = coherent_amplitudes(ctx, layer);
  for (const std::string& label : ctx.layer(layer).labels) v.basis.push_back(ket(label));
  double sq = 0.0;
  for (const Amplitude& a : v.coords) sq += std::norm(a);
  if (std::abs(sq - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "layer " << layer << " has squared norm " << sq;
    throw Error(ErrorCode::kNormalizationViolation, msg.str());
  }
  return v;
}

Projection project(const StateVector& state, std::size_t j) {
  if (j >= state.dim()) throw Error(ErrorCode::kInvalidArgument, "projection index out of range");
  if (std::abs(state.coords[j]) < 1e-12) {
    throw Error(ErrorCode::kZeroAmplitudeProjection,
                state.basis.at(j) + " has zero amplitude and cannot be observed");
  }
  return {basis_vector(state.basis, j), std::norm(state.coords[j])};
}

TensorBasis tensor_context(const ContextNetwork& ctx, bool simultaneously_knowable) {
  if (!simultaneously_knowable) {
    throw Error(ErrorCode::kNotSimultaneouslyKnowable,
                "a product space needs simultaneously knowable attributes");
  }
  if (ctx.layer_count() != 2) {
    throw Error(ErrorCode::kUnsupportedLayerCount,
                "product spaces are built for two layers, got " +
                    std::to_string(ctx.layer_count()));
  }
  TensorBasis basis;
  basis.m = ctx.layer(0).size();
  basis.m_prime = ctx.layer(1).size();
  for (const std::string& a : ctx.layer(0).labels) {
    for (const std::string& b : ctx.layer(1).labels) basis.labels.push_back(ket(a) + "⊗" + ket(b));
  }
  return basis;
}

StateVector resolved_product_state(const TensorBasis& basis, const EpistemicState& state) {
  if (state.size() != 2) {
    throw Error(ErrorCode::kUnsupportedLayerCount, "state does not have two layers");
  }
  const auto* first = std::get_if<Resolved>(&state.bracket(0));
  const auto* second = std::get_if<Resolved>(&state.bracket(1));
  if (first == nullptr || second == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "only fully resolved states map to product basis vectors");
  }
  return basis_vector(basis.labels, basis.index(first->alternative, second->alternative));
}

std::string to_json(const StateVector& state, int indent) {
  nlohmann::ordered_json j;
  j["dim"] = state.dim();
  j["basis"] = state.basis;
  nlohmann::ordered_json coords = nlohmann::ordered_json::array();
  for (const Amplitude& a : state.coords) coords.push_back({a.real(), a.imag()});
  j["coords"] = std::move(coords);
  return j.dump(indent);
}

}  // namespace knowctx

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

#include <string>
#include <string_view>
#include <vector>

#include "knowctx/context.hpp"
#include "knowctx/epistemic_state.hpp"

namespace knowctx {

/// Contents of a context scenario file.
///
///   {
///     "name": "mz-b",
///     "layers": [{"size": 2, "knowability": 1}, {"size": 2, "knowability": 3}],
///     "first_layer": [[re, im], ...],
///     "transitions": [ [[[re, im], ...], ...], ... ],
///     "events": [{"n": 1, "kind": "attain", "layer": 0},
///                {"n": 2, "kind": "observe", "layer": 1, "outcome": 0}]
///   }
///
/// `transitions` is a list of matrices, one per consecutive layer pair. A
/// single bare matrix is also accepted for two-layer contexts. Event kinds
/// are attain, observe, erase and promote (promote always targets level 3);
/// `outcome` is 0-based and only allowed on observe. Unknown fields are
/// rejected.
struct Scenario {
  std::string name;
  std::vector<LayerSpec> layers;
  AmplitudeAssignment amplitudes;
  std::vector<ContextEvent> events;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws Error(kParseError) with a "line L, column C:" prefix when the
/// location is known.
Scenario parse_scenario(std::string_view json_text);
std::string dump_scenario(const Scenario& scenario);

/// build_context over the scenario's layers and amplitudes.
ContextNetwork build_context(const Scenario& scenario, ProbabilityRule rule);

}  // namespace knowctx

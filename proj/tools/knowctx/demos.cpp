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

#include "demos.hpp"

#include <cmath>

namespace knowctx::cli {
namespace {

const double kHalf = 1.0 / std::sqrt(2.0);

AmplitudeAssignment symmetric_mz() {
  AmplitudeAssignment a;
  a.first_layer = {kHalf, kHalf};
  a.transitions.push_back(AmplitudeMatrix::from_rows({{Amplitude(kHalf, 0.0), Amplitude(0.0, kHalf)},
                                                      {Amplitude(kHalf, 0.0), Amplitude(0.0, -kHalf)}}));
  return a;
}

Scenario two_layer(std::string name, Knowability path_level, std::vector<ContextEvent> events) {
  return {std::move(name),
          {{2, path_level}, {2, Knowability::kL3}},
          symmetric_mz(),
          std::move(events)};
}

std::vector<Demo> build() {
  std::vector<Demo> out;
  out.push_back({"mz-a", "detectors at the mirrors and at the exit: both sets observed",
                 two_layer("mz-a", Knowability::kL3,
                           {ContextEvent::observe(1, 0, 0), ContextEvent::observe(2, 1, 0)})});
  out.push_back({"mz-b", "no detector at the mirrors: the path is never knowable",
                 two_layer("mz-b", Knowability::kL1,
                           {ContextEvent::attain(1, 0), ContextEvent::observe(2, 1, 0)})});

  // With the exit unknowable the experiment can only end at the mirrors, so
  // the context reduces to the mirror set alone.
  Scenario c{"mz-c", {{2, Knowability::kL3}}, {{kHalf, kHalf}, {}}, {ContextEvent::observe(1, 0, 0)}};
  out.push_back({"mz-c", "exit never knowable: the mirror set is the final observation",
                 std::move(c)});

  out.push_back({"delayed-choice",
                 "path knowable but read only after the exit is observed",
                 two_layer("delayed-choice", Knowability::kL2,
                           {ContextEvent::attain(1, 0), ContextEvent::observe(2, 1, 0),
                            ContextEvent::promote(3, 0), ContextEvent::observe(4, 0, 0)})});
  out.push_back({"eraser", "path record erased before the exit is reached",
                 two_layer("eraser", Knowability::kL2,
                           {ContextEvent::attain(1, 0), ContextEvent::erase(2, 0),
                            ContextEvent::observe(3, 1, 0)})});
  return out;
}

}  // namespace

const std::vector<Demo>& demos() {
  static const std::vector<Demo> all = build();
  return all;
}

const Demo* find_demo(std::string_view name) {
  for (const Demo& d : demos()) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

}  // namespace knowctx::cli

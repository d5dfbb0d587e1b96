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

#include "knowctx/scenario.hpp"

namespace knowctx::cli {

struct Demo {
  std::string name;
  std::string summary;
  Scenario scenario;
};

/// Built-in adjustable Mach-Zehnder scenarios, in display order.
const std::vector<Demo>& demos();

/// nullptr when no demo has this name.
const Demo* find_demo(std::string_view name);

}  // namespace knowctx::cli

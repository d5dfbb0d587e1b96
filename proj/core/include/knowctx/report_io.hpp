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

#include "knowctx/engine.hpp"
#include "knowctx/feasibility.hpp"

namespace knowctx {

// JSON carries doubles at full round-trip precision; tables use six
// significant digits in fixed-width columns.

std::string to_json(const DofAccount& dof, int indent = 2);
std::string to_json(const FeasibilityReport& report, int indent = 2);
std::string to_json(const OutcomeDistribution& dist, int indent = 2);

std::string render_table(const DofAccount& dof);
std::string render_table(const FeasibilityReport& report);

/// Left-aligned fixed-width rendering of a header row plus data rows.
std::string align_columns(const std::vector<std::vector<std::string>>& rows);

/// Six significant digits.
std::string format_short(double value);

/// Shortest text that parses back to the same double.
std::string format_full(double value);

}  // namespace knowctx

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
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "knowctx/context.hpp"

namespace knowctx {

/// One amplitude factor: c_to when layer == 0, otherwise the transition
/// amplitude from alternative `from` of layer-1 to alternative `to` of layer.
struct AmplitudeRef {
  std::size_t layer = 0;
  std::size_t from = 0;
  std::size_t to = 0;

  friend bool operator==(const AmplitudeRef&, const AmplitudeRef&) = default;
};

/// Juxtaposed factors of one sequence of possible events (a product).
using PathTerm = std::vector<AmplitudeRef>;

/// Parallel sequences separated by voids (a sum of products).
struct Expression {
  std::vector<PathTerm> terms;

  friend bool operator==(const Expression&, const Expression&) = default;
};

struct UnresolvedEntry {
  Expression expression;
  std::size_t alternative = 0;

  friend bool operator==(const UnresolvedEntry&, const UnresolvedEntry&) = default;
};

/// [(expr|A1) (expr|A2) ...]: no alternative excluded yet.
struct Unresolved {
  std::vector<UnresolvedEntry> entries;
  friend bool operator==(const Unresolved&, const Unresolved&) = default;
};

/// [Aj]: alternative j has been observed.
struct Resolved {
  std::size_t alternative = 0;
  friend bool operator==(const Resolved&, const Resolved&) = default;
};

/// [A1 A2 ...]: attained, and it is unknowable which alternative occurred.
struct Collapsed {
  std::vector<std::size_t> alternatives;
  friend bool operator==(const Collapsed&, const Collapsed&) = default;
};

using Bracket = std::variant<Unresolved, Resolved, Collapsed>;

enum class EventKind { kAttain, kObserve, kErase, kPromote };

struct ContextEvent {
  EventKind kind = EventKind::kAttain;
  std::size_t layer = 0;
  /// 0-based alternative index; used by kObserve only.
  std::size_t outcome = 0;
  /// Target level; used by kPromote only (must be L3).
  Knowability new_level = Knowability::kL3;
  std::int64_t timestamp = 0;

  static ContextEvent attain(std::int64_t n, std::size_t layer) {
    return {EventKind::kAttain, layer, 0, Knowability::kL3, n};
  }
  static ContextEvent observe(std::int64_t n, std::size_t layer, std::size_t outcome) {
    return {EventKind::kObserve, layer, outcome, Knowability::kL3, n};
  }
  static ContextEvent erase(std::int64_t n, std::size_t layer) {
    return {EventKind::kErase, layer, 0, Knowability::kL1, n};
  }
  static ContextEvent promote(std::int64_t n, std::size_t layer) {
    return {EventKind::kPromote, layer, 0, Knowability::kL3, n};
  }

  friend bool operator==(const ContextEvent&, const ContextEvent&) = default;
};

std::string_view to_string(EventKind kind) noexcept;
/// "attain 0", "observe 1:0", "erase 0", "promote 0".
std::string describe(const ContextEvent& ev);

/// Symbolic epistemic state of a running context: one bracket per layer plus
/// the bookkeeping needed to apply further events (current knowability levels
/// after erasure/promotion, which layers were attained, the last timestamp).
class EpistemicState {
 public:
  const std::vector<Bracket>& brackets() const noexcept { return brackets_; }
  const Bracket& bracket(std::size_t k) const { return brackets_.at(k); }
  std::size_t size() const noexcept { return brackets_.size(); }

  Knowability level(std::size_t k) const { return levels_.at(k); }
  bool attained(std::size_t k) const { return attained_.at(k) != 0; }
  std::optional<std::int64_t> last_timestamp() const noexcept { return last_timestamp_; }
  const std::vector<std::string>& labels(std::size_t k) const { return labels_.at(k); }

  bool is_resolved(std::size_t k) const {
    return std::holds_alternative<Resolved>(brackets_.at(k));
  }
  bool is_collapsed(std::size_t k) const {
    return std::holds_alternative<Collapsed>(brackets_.at(k));
  }
  bool is_unresolved(std::size_t k) const {
    return std::holds_alternative<Unresolved>(brackets_.at(k));
  }

  /// Layers at knowability 2 that are still unresolved. These may stay that
  /// way indefinitely; they are not an error.
  std::vector<std::size_t> pending_layers() const;

  /// Structural equality of the bracket lists.
  friend bool operator==(const EpistemicState& a, const EpistemicState& b) {
    return a.brackets_ == b.brackets_;
  }

 private:
  friend EpistemicState initial_state(const ContextNetwork&);
  friend EpistemicState apply_event(const EpistemicState&, const ContextNetwork&,
                                    const ContextEvent&);

  std::vector<Bracket> brackets_;
  std::vector<Knowability> levels_;
  std::vector<char> attained_;
  std::vector<std::vector<std::string>> labels_;
  std::optional<std::int64_t> last_timestamp_;
};

/// Every bracket unresolved; bracket k lists, for each alternative, the
/// products along all paths from layer 0 into it.
EpistemicState initial_state(const ContextNetwork& ctx);

/// Returns the successor state. Errors: kIllegalObservation,
/// kOutOfOrderEvent, kAlreadyResolved, kKnowabilityMismatch (erase or
/// promote on a layer not at level 2), kInvalidArgument (index out of range).
EpistemicState apply_event(const EpistemicState& state, const ContextNetwork& ctx,
                           const ContextEvent& ev);

/// Deterministic rendering, e.g. "[A1 A2][(c1 c11 + c2 c21|A1') (c1 c12 + c2 c22|A2')]".
/// Brackets are concatenated; factors are separated by one space and
/// parallel sequences by " + ".
std::string canonical_string(const EpistemicState& state);
std::string render_expression(const Expression& expr);

}  // namespace knowctx

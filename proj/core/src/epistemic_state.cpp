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

#include "knowctx/epistemic_state.hpp"

#include <optional>

#include "knowctx/errors.hpp"

namespace knowctx {
namespace {

// Latest layer before `layer` whose bracket is resolved.
std::optional<std::size_t> latest_resolved_before(const std::vector<Bracket>& brackets,
                                                  std::size_t layer) {
  for (std::size_t k = layer; k-- > 0;) {
    if (std::holds_alternative<Resolved>(brackets[k])) return k;
  }
  return std::nullopt;
}

// All paths from `start_layer` (at alternative `start_alt`, or from the
// first-layer amplitudes when start_alt is empty) into (target_layer, target).
void collect_paths(const ContextNetwork& ctx, std::size_t layer, std::size_t alt,
                   std::size_t target_layer, std::size_t target, PathTerm& partial,
                   std::vector<PathTerm>& out) {
  if (layer == target_layer) {
    if (alt == target) out.push_back(partial);
    return;
  }
  const std::size_t next = layer + 1;
  const std::size_t width = ctx.layer(next).size();
  for (std::size_t b = 0; b < width; ++b) {
    if (next == target_layer && b != target) continue;
    partial.push_back({next, alt, b});
    collect_paths(ctx, next, b, target_layer, target, partial, out);
    partial.pop_back();
  }
}

Expression expression_for(const ContextNetwork& ctx, const std::vector<Bracket>& brackets,
                          std::size_t layer, std::size_t alt) {
  Expression expr;
  PathTerm partial;
  if (auto r = latest_resolved_before(brackets, layer)) {
    const std::size_t start = std::get<Resolved>(brackets[*r]).alternative;
    collect_paths(ctx, *r, start, layer, alt, partial, expr.terms);
    return expr;
  }
  const std::size_t width = ctx.layer(0).size();
  for (std::size_t a = 0; a < width; ++a) {
    if (layer == 0 && a != alt) continue;
    partial.push_back({0, 0, a});
    collect_paths(ctx, 0, a, layer, alt, partial, expr.terms);
    partial.pop_back();
  }
  return expr;
}

Unresolved unresolved_bracket(const ContextNetwork& ctx, const std::vector<Bracket>& brackets,
                              std::size_t layer) {
  Unresolved u;
  for (std::size_t j = 0; j < ctx.layer(layer).size(); ++j) {
    u.entries.push_back({expression_for(ctx, brackets, layer, j), j});
  }
  return u;
}

Collapsed collapsed_bracket(std::size_t size) {
  Collapsed c;
  for (std::size_t j = 0; j < size; ++j) c.alternatives.push_back(j);
  return c;
}

[[noreturn]] void fail(ErrorCode code, const ContextEvent& ev, const std::string& why) {
  throw Error(code, describe(ev) + " at n=" + std::to_string(ev.timestamp) + ": " + why);
}

}  // namespace

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::kAttain: return "attain";
    case EventKind::kObserve: return "observe";
    case EventKind::kErase: return "erase";
    case EventKind::kPromote: return "promote";
  }
  return "?";
}

std::string describe(const ContextEvent& ev) {
  std::string s(to_string(ev.kind));
  s += " " + std::to_string(ev.layer);
  if (ev.kind == EventKind::kObserve) s += ":" + std::to_string(ev.outcome);
  return s;
}

std::vector<std::size_t> EpistemicState::pending_layers() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < brackets_.size(); ++k) {
    if (levels_[k] == Knowability::kL2 && is_unresolved(k)) out.push_back(k);
  }
  return out;
}

EpistemicState initial_state(const ContextNetwork& ctx) {
  EpistemicState s;
  const std::size_t n = ctx.layer_count();
  s.brackets_.resize(n);
  s.levels_.reserve(n);
  for (const AlternativeSet& set : ctx.layers()) {
    s.levels_.push_back(set.knowability);
    s.labels_.push_back(set.labels);
  }
  s.attained_.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    s.brackets_[k] = unresolved_bracket(ctx, s.brackets_, k);
  }
  return s;
}

EpistemicState apply_event(const EpistemicState& state, const ContextNetwork& ctx,
                           const ContextEvent& ev) {
  if (state.size() != ctx.layer_count()) {
    throw Error(ErrorCode::kShapeMismatch, "state does not belong to this context");
  }
  if (state.last_timestamp_ && ev.timestamp < *state.last_timestamp_) {
    fail(ErrorCode::kOutOfOrderEvent, ev,
         "timestamp precedes n=" + std::to_string(*state.last_timestamp_));
  }
  if (ev.layer >= state.size()) fail(ErrorCode::kInvalidArgument, ev, "no such layer");

  EpistemicState next = state;
  next.last_timestamp_ = ev.timestamp;
  const std::size_t k = ev.layer;
  const Knowability level = state.levels_[k];

  switch (ev.kind) {
    case EventKind::kAttain: {
      if (state.is_resolved(k)) fail(ErrorCode::kAlreadyResolved, ev, "layer already observed");
      next.attained_[k] = 1;
      if (level == Knowability::kL1 && state.is_unresolved(k)) {
        next.brackets_[k] = collapsed_bracket(ctx.layer(k).size());
      }
      break;
    }
    case EventKind::kObserve: {
      if (state.is_resolved(k)) fail(ErrorCode::kAlreadyResolved, ev, "layer already observed");
      if (state.is_collapsed(k)) {
        fail(ErrorCode::kIllegalObservation, ev, "the outcome of this set is unknowable");
      }
      if (level != Knowability::kL3) {
        fail(ErrorCode::kIllegalObservation, ev,
             "observation requires knowability level 3, layer is " +
                 std::string(to_string(level)));
      }
      if (ev.outcome >= ctx.layer(k).size()) {
        fail(ErrorCode::kInvalidArgument, ev, "no such alternative");
      }
      next.attained_[k] = 1;
      next.brackets_[k] = Resolved{ev.outcome};
      for (std::size_t m = k + 1; m < next.size(); ++m) {
        if (next.is_unresolved(m)) next.brackets_[m] = unresolved_bracket(ctx, next.brackets_, m);
      }
      break;
    }
    case EventKind::kErase: {
      if (state.is_resolved(k)) fail(ErrorCode::kAlreadyResolved, ev, "layer already observed");
      if (level != Knowability::kL2) {
        fail(ErrorCode::kKnowabilityMismatch, ev,
             "erasure degrades level 2 only, layer is " + std::string(to_string(level)));
      }
      next.levels_[k] = Knowability::kL1;
      if (state.attained(k)) next.brackets_[k] = collapsed_bracket(ctx.layer(k).size());
      break;
    }
    case EventKind::kPromote: {
      if (ev.new_level != Knowability::kL3) {
        fail(ErrorCode::kInvalidArgument, ev, "promotion targets level 3");
      }
      if (state.is_resolved(k)) fail(ErrorCode::kAlreadyResolved, ev, "layer already observed");
      if (level != Knowability::kL2) {
        fail(ErrorCode::kKnowabilityMismatch, ev,
             "promotion raises level 2 only, layer is " + std::string(to_string(level)));
      }
      next.levels_[k] = Knowability::kL3;
      break;
    }
  }
  return next;
}

std::string render_expression(const Expression& expr) {
  std::string out;
  for (std::size_t t = 0; t < expr.terms.size(); ++t) {
    if (t > 0) out += " + ";
    const PathTerm& term = expr.terms[t];
    for (std::size_t f = 0; f < term.size(); ++f) {
      if (f > 0) out += ' ';
      out += amplitude_symbol(term[f].layer, term[f].from, term[f].to);
    }
  }
  return out;
}

std::string canonical_string(const EpistemicState& state) {
  std::string out;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const auto& labels = state.labels(k);
    out += '[';
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, Resolved>) {
            out += labels.at(b.alternative);
          } else if constexpr (std::is_same_v<T, Collapsed>) {
            for (std::size_t i = 0; i < b.alternatives.size(); ++i) {
              if (i > 0) out += ' ';
              out += labels.at(b.alternatives[i]);
            }
          } else {
            for (std::size_t i = 0; i < b.entries.size(); ++i) {
              if (i > 0) out += ' ';
              out += '(' + render_expression(b.entries[i].expression) + '|' +
                     labels.at(b.entries[i].alternative) + ')';
            }
          }
        },
        state.bracket(k));
    out += ']';
  }
  return out;
}

}  // namespace knowctx

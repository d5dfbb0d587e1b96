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

#include "knowctx/scenario.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "knowctx/errors.hpp"

namespace knowctx {
namespace {

using nlohmann::json;

struct Location {
  std::size_t line = 0;
  std::size_t column = 0;
};

Location location_of_offset(std::string_view text, std::size_t offset) {
  Location loc{1, 1};
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

// Line of the nth occurrence of "key" in the raw text; 0 when absent.
std::size_t line_of_key(std::string_view text, std::string_view key, std::size_t nth) {
  const std::string needle = "\"" + std::string(key) + "\"";
  std::size_t pos = 0;
  for (std::size_t i = 0;; ++i) {
    pos = text.find(needle, pos);
    if (pos == std::string_view::npos) return 0;
    if (i == nth) return location_of_offset(text, pos).line;
    pos += needle.size();
  }
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& path, std::string_view key, std::size_t nth,
                         const std::string& why) const {
    const std::size_t line = line_of_key(text_, key, nth);
    std::string prefix = line > 0 ? "line " + std::to_string(line) + ": " : "";
    throw Error(ErrorCode::kParseError, prefix + path + ": " + why);
  }

  void only_fields(const json& obj, std::initializer_list<std::string_view> allowed,
                   const std::string& path, std::string_view key, std::size_t nth) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
        const std::size_t line = line_of_key(text_, it.key(), 0);
        if (line > 0) {
          throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + path +
                                                  ": unknown field \"" + it.key() + "\"");
        }
        fail(path, key, nth, "unknown field \"" + it.key() + "\"");
      }
    }
  }

  const json& require(const json& obj, const std::string& field, const std::string& path,
                      std::string_view key, std::size_t nth) const {
    auto it = obj.find(field);
    if (it == obj.end()) fail(path, key, nth, "missing field \"" + field + "\"");
    return *it;
  }

  std::int64_t integer(const json& v, const std::string& path, std::string_view key,
                       std::size_t nth) const {
    if (!v.is_number_integer()) fail(path, key, nth, "expected an integer");
    return v.get<std::int64_t>();
  }

  std::size_t index(const json& v, const std::string& path, std::string_view key,
                    std::size_t nth) const {
    const std::int64_t i = integer(v, path, key, nth);
    if (i < 0) fail(path, key, nth, "expected a nonnegative integer");
    return static_cast<std::size_t>(i);
  }

  Amplitude amplitude(const json& v, const std::string& path, std::string_view key,
                      std::size_t nth) const {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      fail(path, key, nth, "expected [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }

  std::vector<Amplitude> amplitude_row(const json& v, const std::string& path,
                                       std::string_view key, std::size_t nth) const {
    if (!v.is_array()) fail(path, key, nth, "expected an array of [re, im] pairs");
    std::vector<Amplitude> row;
    for (std::size_t i = 0; i < v.size(); ++i) {
      row.push_back(amplitude(v[i], path + "[" + std::to_string(i) + "]", key, nth));
    }
    return row;
  }

  AmplitudeMatrix matrix(const json& v, const std::string& path, std::string_view key,
                         std::size_t nth) const {
    if (!v.is_array()) fail(path, key, nth, "expected a matrix");
    std::vector<std::vector<Amplitude>> rows;
    for (std::size_t r = 0; r < v.size(); ++r) {
      rows.push_back(amplitude_row(v[r], path + "[" + std::to_string(r) + "]", key, nth));
    }
    for (const auto& row : rows) {
      if (row.size() != rows.front().size()) fail(path, key, nth, "ragged matrix");
    }
    return AmplitudeMatrix::from_rows(rows);
  }

 private:
  std::string_view text_;
};

EventKind parse_kind(const Reader& rd, const json& v, const std::string& path,
                     std::size_t nth) {
  if (!v.is_string()) rd.fail(path, "kind", nth, "expected a string");
  const std::string s = v.get<std::string>();
  if (s == "attain") return EventKind::kAttain;
  if (s == "observe") return EventKind::kObserve;
  if (s == "erase") return EventKind::kErase;
  if (s == "promote") return EventKind::kPromote;
  rd.fail(path, "kind", nth, "unknown event kind \"" + s + "\"");
}

json amplitude_json(Amplitude c) { return json::array({c.real(), c.imag()}); }

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const Location loc = location_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(ErrorCode::kParseError, "line " + std::to_string(loc.line) + ", column " +
                                            std::to_string(loc.column) + ": malformed JSON (" +
                                            e.what() + ")");
  }
  Reader rd(text);
  if (!doc.is_object()) rd.fail("$", "", 0, "expected a JSON object");
  rd.only_fields(doc, {"name", "layers", "first_layer", "transitions", "events"}, "$", "", 0);

  Scenario sc;
  const json& name = rd.require(doc, "name", "$", "", 0);
  if (!name.is_string()) rd.fail("name", "name", 0, "expected a string");
  sc.name = name.get<std::string>();

  const json& layers = rd.require(doc, "layers", "$", "", 0);
  if (!layers.is_array()) rd.fail("layers", "layers", 0, "expected an array");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const std::string path = "layers[" + std::to_string(i) + "]";
    const json& layer = layers[i];
    if (!layer.is_object()) rd.fail(path, "layers", 0, "expected an object");
    rd.only_fields(layer, {"size", "knowability"}, path, "size", i);
    LayerSpec spec;
    spec.size = rd.index(rd.require(layer, "size", path, "layers", 0), path + ".size", "size", i);
    const std::int64_t level = rd.integer(rd.require(layer, "knowability", path, "layers", 0),
                                          path + ".knowability", "knowability", i);
    if (level < 1 || level > 3) {
      rd.fail(path + ".knowability", "knowability", i, "knowability must be 1, 2 or 3");
    }
    spec.knowability = static_cast<Knowability>(level);
    sc.layers.push_back(spec);
  }

  sc.amplitudes.first_layer =
      rd.amplitude_row(rd.require(doc, "first_layer", "$", "", 0), "first_layer", "first_layer", 0);

  const json& transitions = rd.require(doc, "transitions", "$", "", 0);
  if (!transitions.is_array()) rd.fail("transitions", "transitions", 0, "expected an array");
  const bool bare_matrix = !transitions.empty() && transitions[0].is_array() &&
                           !transitions[0].empty() && transitions[0][0].is_array() &&
                           !transitions[0][0].empty() && transitions[0][0][0].is_number();
  if (bare_matrix) {
    sc.amplitudes.transitions.push_back(
        rd.matrix(transitions, "transitions", "transitions", 0));
  } else {
    for (std::size_t t = 0; t < transitions.size(); ++t) {
      sc.amplitudes.transitions.push_back(rd.matrix(
          transitions[t], "transitions[" + std::to_string(t) + "]", "transitions", 0));
    }
  }

  if (auto it = doc.find("events"); it != doc.end()) {
    if (!it->is_array()) rd.fail("events", "events", 0, "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "events[" + std::to_string(i) + "]";
      const json& ev = (*it)[i];
      if (!ev.is_object()) rd.fail(path, "events", 0, "expected an object");
      rd.only_fields(ev, {"n", "kind", "layer", "outcome"}, path, "kind", i);
      ContextEvent out;
      out.timestamp = rd.integer(rd.require(ev, "n", path, "kind", i), path + ".n", "kind", i);
      out.kind = parse_kind(rd, rd.require(ev, "kind", path, "kind", i), path + ".kind", i);
      out.layer = rd.index(rd.require(ev, "layer", path, "kind", i), path + ".layer", "kind", i);
      const bool has_outcome = ev.contains("outcome");
      if (out.kind == EventKind::kObserve) {
        out.outcome = rd.index(rd.require(ev, "outcome", path, "kind", i), path + ".outcome",
                               "kind", i);
      } else if (has_outcome) {
        rd.fail(path + ".outcome", "kind", i, "outcome is only allowed on observe events");
      }
      out.new_level = out.kind == EventKind::kErase ? Knowability::kL1 : Knowability::kL3;
      sc.events.push_back(out);
    }
  }
  return sc;
}

std::string dump_scenario(const Scenario& sc) {
  json doc;
  doc["name"] = sc.name;
  doc["layers"] = json::array();
  for (const LayerSpec& l : sc.layers) {
    doc["layers"].push_back({{"size", l.size}, {"knowability", static_cast<int>(l.knowability)}});
  }
  doc["first_layer"] = json::array();
  for (const Amplitude& c : sc.amplitudes.first_layer) doc["first_layer"].push_back(amplitude_json(c));
  doc["transitions"] = json::array();
  for (const AmplitudeMatrix& m : sc.amplitudes.transitions) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (const Amplitude& c : m.row(r)) row.push_back(amplitude_json(c));
      rows.push_back(std::move(row));
    }
    doc["transitions"].push_back(std::move(rows));
  }
  doc["events"] = json::array();
  for (const ContextEvent& ev : sc.events) {
    json e = {{"n", ev.timestamp}, {"kind", std::string(to_string(ev.kind))}, {"layer", ev.layer}};
    if (ev.kind == EventKind::kObserve) e["outcome"] = ev.outcome;
    doc["events"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

ContextNetwork build_context(const Scenario& scenario, ProbabilityRule rule) {
  return build_context(scenario.layers, scenario.amplitudes, rule, scenario.name);
}

}  // namespace knowctx

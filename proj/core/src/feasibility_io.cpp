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

#include "knowctx/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace knowctx {
namespace {

using nlohmann::ordered_json;

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json optional_long(const std::optional<long>& v) {
  if (!v) return nullptr;
  return *v;
}

ordered_json dof_json(const DofAccount& dof) {
  ordered_json j;
  j["unknowns"] = dof.unknowns;
  j["conditions"] = optional_long(dof.conditions);
  j["available"] = optional_long(dof.available);
  j["required"] = dof.required;
  j["deficit"] = dof.deficit();
  j["first_layer"] = {{"unknowns", dof.first_layer_unknowns},
                      {"conditions", dof.first_layer_conditions},
                      {"available", dof.first_layer_available},
                      {"required", dof.first_layer_required}};
  return j;
}

ordered_json matrix_json(const AmplitudeMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (const Amplitude& c : m.row(r)) row.push_back({c.real(), c.imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string optional_text(const std::optional<long>& v) {
  return v ? std::to_string(*v) : "n/a";
}

}  // namespace

std::string format_short(double value) {
  std::ostringstream s;
  s.precision(6);
  s << value;
  return s.str();
}

std::string format_full(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string align_columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string to_json(const DofAccount& dof, int indent) { return dof_json(dof).dump(indent); }

std::string to_json(const FeasibilityReport& report, int indent) {
  ordered_json j;
  j["verdict"] = std::string(to_string(report.verdict));
  j["shape"] = {{"m", report.shape.m}, {"m_prime", report.shape.m_prime}};
  j["rule"] = report.rule.name();
  j["gamma"] = report.rule.gamma();
  j["best_residual"] = number(report.best_residual);
  j["restarts"] = report.restarts;
  j["best_restart"] = report.best_restart;
  j["converged_restarts"] = report.converged_restarts;
  j["refutation_certified"] = report.refutation_certified;
  j["jacobian_rank"] = report.jacobian_rank ? ordered_json(*report.jacobian_rank) : nullptr;
  j["deterministic_witness"] = report.deterministic_witness;
  j["residual_count"] = report.residual_count;
  j["unknown_count"] = report.unknown_count;
  j["seed"] = report.seed;
  j["generator"] = report.generator;
  j["reason"] = report.reason;
  j["witness"] = report.witness ? matrix_json(*report.witness) : nullptr;
  j["dof"] = report.dof ? dof_json(*report.dof) : nullptr;
  return j.dump(indent);
}

std::string to_json(const OutcomeDistribution& dist, int indent) {
  ordered_json j;
  j["layer"] = dist.layer;
  j["probabilities"] = dist.probs;
  j["sum"] = dist.sum();
  j["observable"] = dist.observable;
  j["observed_count"] = dist.observed_count;
  j["conditioning"] = dist.conditioning;
  j["normalization_deviation"] = dist.normalization_deviation;
  j["warnings"] = dist.warnings;
  return j.dump(indent);
}

std::string render_table(const DofAccount& dof) {
  std::vector<std::vector<std::string>> rows{{"scope", "unknowns", "conditions", "available",
                                              "required", "deficit"}};
  rows.push_back({"transitions", std::to_string(dof.unknowns), optional_text(dof.conditions),
                  optional_text(dof.available), std::to_string(dof.required),
                  std::to_string(dof.deficit())});
  rows.push_back({"first layer", std::to_string(dof.first_layer_unknowns),
                  std::to_string(dof.first_layer_conditions),
                  std::to_string(dof.first_layer_available),
                  std::to_string(dof.first_layer_required),
                  std::to_string(std::max(0L, dof.first_layer_required - dof.first_layer_available))});
  return align_columns(rows);
}

std::string render_table(const FeasibilityReport& report) {
  std::vector<std::vector<std::string>> rows{{"field", "value"}};
  rows.push_back({"verdict", std::string(to_string(report.verdict))});
  rows.push_back({"shape", "(" + std::to_string(report.shape.m) + "," +
                               std::to_string(report.shape.m_prime) + ")"});
  rows.push_back({"rule", report.rule.name()});
  rows.push_back({"best residual", format_short(report.best_residual)});
  rows.push_back({"restarts", std::to_string(report.restarts)});
  rows.push_back({"converged restarts", std::to_string(report.converged_restarts)});
  rows.push_back({"best restart", std::to_string(report.best_restart)});
  rows.push_back({"refutation certified", report.refutation_certified ? "yes" : "no"});
  rows.push_back({"residuals x unknowns", std::to_string(report.residual_count) + " x " +
                                              std::to_string(report.unknown_count)});
  rows.push_back({"jacobian rank",
                  report.jacobian_rank ? std::to_string(*report.jacobian_rank) : "n/a"});
  rows.push_back({"deterministic witness", report.deterministic_witness ? "yes" : "no"});
  rows.push_back({"seed", std::to_string(report.seed)});
  rows.push_back({"generator", report.generator});
  rows.push_back({"reason", report.reason});
  std::string out = align_columns(rows);
  if (report.witness) {
    out += "\nwitness\n";
    std::vector<std::vector<std::string>> w;
    for (std::size_t r = 0; r < report.witness->rows(); ++r) {
      std::vector<std::string> line;
      for (const Amplitude& c : report.witness->row(r)) {
        line.push_back(format_short(c.real()) + (c.imag() < 0 ? " - " : " + ") +
                       format_short(std::abs(c.imag())) + "i");
      }
      w.push_back(std::move(line));
    }
    out += align_columns(w);
  }
  if (report.dof) out += "\n" + render_table(*report.dof);
  return out;
}

}  // namespace knowctx

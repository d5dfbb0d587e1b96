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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "demos.hpp"
#include "json.hpp"
#include "knowctx/engine.hpp"
#include "knowctx/errors.hpp"
#include "knowctx/feasibility.hpp"
#include "knowctx/oracle.hpp"
#include "knowctx/random.hpp"
#include "knowctx/report_io.hpp"
#include "knowctx/scenario.hpp"

namespace knowctx::cli {
namespace {

using nlohmann::ordered_json;

enum class Format { kTable, kCsv, kJson };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "table";
  std::string output;
  std::optional<std::uint64_t> seed;
};

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::kCsv;
  if (s == "json") return Format::kJson;
  return Format::kTable;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != end) {
    throw UsageError(what + " must be a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("KNOWCTX_SEED"); env != nullptr && *env != '\0') {
    return parse_u64(env, "KNOWCTX_SEED");
  }
  return 0;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

ShapeSpec parse_shape(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw UsageError("shape must be M,M' (e.g. 2,2), got '" + s + "'");
  const std::uint64_t m = parse_u64(parts[0], "M");
  const std::uint64_t mp = parse_u64(parts[1], "M'");
  if (m == 0 || mp == 0) throw UsageError("shape sizes must be at least 1");
  return {static_cast<std::size_t>(m), static_cast<std::size_t>(mp)};
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s, const std::string& what) {
  const auto dots = s.find("..");
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  if (dots == std::string::npos) {
    lo = hi = parse_u64(s, what);
  } else {
    lo = parse_u64(s.substr(0, dots), what);
    hi = parse_u64(s.substr(dots + 2), what);
  }
  if (lo == 0 || hi < lo) throw UsageError(what + " must be a range lo..hi with 1 <= lo <= hi");
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

ProbabilityRule make_rule(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw UsageError("gamma must be a positive number");
  }
  return ProbabilityRule::gamma_modulus(gamma);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\n";
}

// ---------------------------------------------------------------- eval

struct TraceStep {
  std::string event;
  std::optional<std::int64_t> n;
  std::string state;
  OutcomeDistribution dist;
};

struct EvalRun {
  std::string name;
  ProbabilityRule rule = ProbabilityRule::born();
  std::vector<std::string> labels;
  std::vector<TraceStep> steps;
  OutcomeDistribution prediction;
  std::vector<std::string> warnings;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

EvalRun run_scenario(const Scenario& sc, ProbabilityRule rule) {
  std::optional<ContextNetwork> ctx;
  try {
    ctx.emplace(build_context(sc, rule));
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
  const std::size_t last = ctx->layer_count() - 1;
  EvalRun run;
  run.name = sc.name;
  run.rule = rule;
  run.labels = ctx->layer(last).labels;
  run.warnings = ctx->warnings();

  EpistemicState state = initial_state(*ctx);
  run.steps.push_back({"initial", std::nullopt, canonical_string(state), eval_auto(*ctx, state, last)});
  std::optional<OutcomeDistribution> prediction = run.steps.back().dist;
  for (const ContextEvent& ev : sc.events) {
    state = apply_event(state, *ctx, ev);
    run.steps.push_back({describe(ev), ev.timestamp, canonical_string(state),
                         eval_auto(*ctx, state, last)});
    if (!state.is_resolved(last)) prediction = run.steps.back().dist;
  }
  run.prediction = std::move(*prediction);
  for (const std::string& w : run.prediction.warnings) run.warnings.push_back(w);
  return run;
}

ordered_json distribution_json(const OutcomeDistribution& d) {
  return ordered_json::parse(to_json(d, -1));
}

void print_eval(const EvalRun& run, Format format, std::ostream& os) {
  switch (format) {
    case Format::kJson: {
      ordered_json j;
      j["scenario"] = run.name;
      j["rule"] = run.rule.name();
      j["gamma"] = run.rule.gamma();
      j["labels"] = run.labels;
      ordered_json trace = ordered_json::array();
      for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const TraceStep& s = run.steps[i];
        trace.push_back({{"step", i},
                         {"event", s.event},
                         {"n", s.n ? ordered_json(*s.n) : ordered_json(nullptr)},
                         {"state", s.state},
                         {"distribution", distribution_json(s.dist)}});
      }
      j["trace"] = std::move(trace);
      j["prediction"] = distribution_json(run.prediction);
      j["warnings"] = run.warnings;
      os << j.dump(2) << "\n";
      return;
    }
    case Format::kCsv: {
      std::vector<std::string> header{"step", "event", "state"};
      header.insert(header.end(), run.labels.begin(), run.labels.end());
      os << csv_row(header);
      for (std::size_t i = 0; i < run.steps.size(); ++i) {
        std::vector<std::string> row{std::to_string(i), run.steps[i].event, run.steps[i].state};
        for (double p : run.steps[i].dist.probs) row.push_back(format_full(p));
        os << csv_row(row);
      }
      std::vector<std::string> row{"prediction", run.prediction.conditioning, ""};
      for (double p : run.prediction.probs) row.push_back(format_full(p));
      os << csv_row(row);
      return;
    }
    case Format::kTable: {
      os << "scenario " << run.name << ", rule " << run.rule.name() << "\n\n";
      std::vector<std::vector<std::string>> rows;
      std::vector<std::string> header{"step", "event", "state"};
      header.insert(header.end(), run.labels.begin(), run.labels.end());
      rows.push_back(header);
      for (std::size_t i = 0; i < run.steps.size(); ++i) {
        std::vector<std::string> row{std::to_string(i), run.steps[i].event, run.steps[i].state};
        for (double p : run.steps[i].dist.probs) row.push_back(format_short(p));
        rows.push_back(std::move(row));
      }
      os << align_columns(rows);
      os << "\nprediction for the final set (" << run.prediction.conditioning << ")\n";
      std::vector<std::vector<std::string>> dist{{"alternative", "value"}};
      for (std::size_t j = 0; j < run.labels.size(); ++j) {
        dist.push_back({run.labels[j], format_short(run.prediction.probs[j])});
      }
      os << align_columns(dist);
      for (const std::string& w : run.warnings) os << "warning: " << w << "\n";
      return;
    }
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const Error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------- feasibility

std::vector<std::string> report_csv_header() {
  return {"verdict",       "m",          "m_prime",   "rule",      "gamma",
          "best_residual", "restarts",   "converged_restarts", "refutation_certified",
          "jacobian_rank", "deterministic_witness", "unknowns", "conditions", "available",
          "required",      "deficit",    "seed",      "generator"};
}

std::vector<std::string> report_csv_row(const FeasibilityReport& r) {
  auto opt = [](const std::optional<long>& v) { return v ? std::to_string(*v) : std::string(); };
  const DofAccount dof = r.dof.value_or(DofAccount{});
  return {std::string(to_string(r.verdict)),
          std::to_string(r.shape.m),
          std::to_string(r.shape.m_prime),
          r.rule.name(),
          format_full(r.rule.gamma()),
          std::isfinite(r.best_residual) ? format_full(r.best_residual) : "",
          std::to_string(r.restarts),
          std::to_string(r.converged_restarts),
          r.refutation_certified ? "true" : "false",
          r.jacobian_rank ? std::to_string(*r.jacobian_rank) : "",
          r.deterministic_witness ? "true" : "false",
          std::to_string(dof.unknowns),
          opt(dof.conditions),
          opt(dof.available),
          std::to_string(dof.required),
          std::to_string(dof.deficit()),
          std::to_string(r.seed),
          r.generator};
}

void print_report(const FeasibilityReport& r, Format format, std::ostream& os) {
  switch (format) {
    case Format::kJson:
      os << to_json(r) << "\n";
      return;
    case Format::kCsv:
      os << csv_row(report_csv_header()) << csv_row(report_csv_row(r));
      return;
    case Format::kTable:
      os << "# seed " << r.seed << ", generator " << r.generator << "\n" << render_table(r);
      return;
  }
}

// ---------------------------------------------------------------- scan

struct ScanCell {
  double gamma;
  FeasibilityReport report;
  bool admissible;
};

char verdict_letter(Verdict v) {
  switch (v) {
    case Verdict::kFeasible: return 'F';
    case Verdict::kNoSolutionFound: return 'N';
    case Verdict::kAnalyticallyInadmissible: return 'A';
  }
  return '?';
}

// ---------------------------------------------------------------- options

struct Options {
  Common common;
  std::string scenario;
  std::string shape;
  std::optional<double> gamma;
  std::size_t restarts = 32;
  std::size_t max_iterations = 500;
  std::string m_range = "1..4";
  std::string m_prime_range = "1..4";
  std::string gammas = "0.5,1,1.5,2";
  std::uint64_t trials = 1'000'000;
  unsigned workers = 1;
  std::string demo;
  std::string export_path;
};

void add_common(CLI::App* cmd, Common& c, bool seeded) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", c.output, "Write the report to this file instead of stdout");
  if (seeded) {
    cmd->add_option("--seed", c.seed, "Random seed (falls back to KNOWCTX_SEED, then 0)");
  }
}

int cmd_eval(const Options& o, std::ostream& os) {
  const ProbabilityRule rule = make_rule(o.gamma.value_or(1.0));
  const Scenario sc = load_scenario(o.scenario);
  print_eval(run_scenario(sc, rule), parse_format(o.common.format), os);
  return kExitOk;
}

int cmd_demo(const Options& o, std::ostream& os, std::ostream& err) {
  const Demo* demo = find_demo(o.demo);
  if (demo == nullptr) {
    std::string names;
    for (const Demo& d : demos()) names += (names.empty() ? "" : ", ") + d.name;
    throw UsageError("unknown demo '" + o.demo + "' (available: " + names + ")");
  }
  if (!o.export_path.empty()) {
    std::ofstream f(o.export_path);
    if (!f) throw UsageError("cannot write '" + o.export_path + "'");
    f << dump_scenario(demo->scenario) << "\n";
    err << "exported " << demo->name << " to " << o.export_path << "\n";
  }
  print_eval(run_scenario(demo->scenario, ProbabilityRule::born()), parse_format(o.common.format),
             os);
  return kExitOk;
}

int cmd_feasibility(const Options& o, std::ostream& os) {
  const ShapeSpec shape = parse_shape(o.shape);
  const ProbabilityRule rule = make_rule(*o.gamma);
  if (o.restarts == 0) throw UsageError("--restarts must be at least 1");
  SolverOptions opt;
  opt.max_iterations = o.max_iterations;
  const FeasibilityReport r = assess(shape, rule, o.restarts, resolve_seed(o.common), opt);
  print_report(r, parse_format(o.common.format), os);
  return r.verdict == Verdict::kFeasible ? kExitOk : kExitNegative;
}

int cmd_scan(const Options& o, std::ostream& os) {
  const auto [m_lo, m_hi] = parse_range(o.m_range, "--m");
  const auto [mp_lo, mp_hi] = parse_range(o.m_prime_range, "--m-prime");
  std::vector<double> gammas;
  for (const std::string& g : split(o.gammas, ',')) {
    if (g.empty()) continue;
    double v = 0.0;
    const auto res = std::from_chars(g.data(), g.data() + g.size(), v);
    if (res.ec != std::errc() || res.ptr != g.data() + g.size()) {
      throw UsageError("bad gamma '" + g + "'");
    }
    make_rule(v);
    gammas.push_back(v);
  }
  if (gammas.empty()) throw UsageError("--gammas must list at least one value");
  if (o.restarts == 0) throw UsageError("--restarts must be at least 1");
  const std::uint64_t seed = resolve_seed(o.common);
  SolverOptions opt;
  opt.max_iterations = o.max_iterations;

  std::vector<ScanCell> cells;
  std::optional<bool> born_matches;
  for (double g : gammas) {
    const ProbabilityRule rule = ProbabilityRule::gamma_modulus(g);
    for (std::size_t m = m_lo; m <= m_hi; ++m) {
      for (std::size_t mp = mp_lo; mp <= mp_hi; ++mp) {
        const ShapeSpec shape{m, mp};
        ScanCell cell{g, assess(shape, rule, o.restarts, seed, opt), born_admissible(shape)};
        if (rule.is_born()) {
          const bool ok = (cell.report.verdict == Verdict::kFeasible) == cell.admissible;
          born_matches = born_matches.value_or(true) && ok;
        }
        cells.push_back(std::move(cell));
      }
    }
  }

  switch (parse_format(o.common.format)) {
    case Format::kJson: {
      ordered_json j;
      j["seed"] = seed;
      j["generator"] = std::string(Rng::kName);
      j["restarts"] = o.restarts;
      j["gammas"] = gammas;
      ordered_json arr = ordered_json::array();
      for (const ScanCell& c : cells) {
        ordered_json cell = ordered_json::parse(to_json(c.report, -1));
        cell["born_admissible"] = c.admissible;
        arr.push_back(std::move(cell));
      }
      j["cells"] = std::move(arr);
      j["born_column_matches_admissibility"] =
          born_matches ? ordered_json(*born_matches) : ordered_json(nullptr);
      os << j.dump(2) << "\n";
      break;
    }
    case Format::kCsv: {
      std::vector<std::string> header = report_csv_header();
      header.push_back("born_admissible");
      os << csv_row(header);
      for (const ScanCell& c : cells) {
        std::vector<std::string> row = report_csv_row(c.report);
        row.push_back(c.admissible ? "true" : "false");
        os << csv_row(row);
      }
      break;
    }
    case Format::kTable: {
      os << "# seed " << seed << ", generator " << Rng::kName << ", restarts " << o.restarts
         << "\n# F feasible, N no solution found, A analytically inadmissible;"
            " * marks a witness made only of 0/1 transitions\n";
      std::size_t idx = 0;
      for (double g : gammas) {
        os << "\n" << ProbabilityRule::gamma_modulus(g).name() << "\n";
        std::vector<std::vector<std::string>> rows;
        std::vector<std::string> header{"M \\ M'"};
        for (std::size_t mp = mp_lo; mp <= mp_hi; ++mp) header.push_back(std::to_string(mp));
        rows.push_back(header);
        for (std::size_t m = m_lo; m <= m_hi; ++m) {
          std::vector<std::string> row{std::to_string(m)};
          for (std::size_t mp = mp_lo; mp <= mp_hi; ++mp, ++idx) {
            const FeasibilityReport& r = cells[idx].report;
            std::string s(1, verdict_letter(r.verdict));
            if (r.deterministic_witness) s += '*';
            row.push_back(s);
          }
          rows.push_back(std::move(row));
        }
        os << align_columns(rows);
      }
      if (born_matches) {
        os << "\nBorn column matches M' >= M - 1: " << (*born_matches ? "yes" : "no") << "\n";
      }
      break;
    }
  }
  return born_matches.value_or(true) ? kExitOk : kExitNegative;
}

int cmd_mc(const Options& o, std::ostream& os) {
  const Scenario sc = load_scenario(o.scenario);
  std::optional<ContextNetwork> ctx;
  try {
    ctx.emplace(build_context(sc, ProbabilityRule::born()));
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
  if (o.trials == 0) throw UsageError("--trials must be at least 1");
  const std::uint64_t seed = resolve_seed(o.common);
  const FrequencyTable table = mc_sample_classical(*ctx, o.trials, seed, o.workers);
  const std::vector<double> exact = enumerate_paths(*ctx).probs;
  const std::vector<std::string>& labels = ctx->layer(ctx->layer_count() - 1).labels;
  const std::vector<double> freq = table.freq();
  auto sigma = [&](std::size_t j) {
    return std::sqrt(exact[j] * (1.0 - exact[j]) / static_cast<double>(table.trials));
  };

  switch (parse_format(o.common.format)) {
    case Format::kCsv:
      os << frequency_csv(table, exact, labels);
      break;
    case Format::kJson: {
      ordered_json j;
      j["scenario"] = sc.name;
      j["seed"] = seed;
      j["generator"] = table.generator;
      j["trials"] = table.trials;
      ordered_json rows = ordered_json::array();
      for (std::size_t k = 0; k < labels.size(); ++k) {
        rows.push_back({{"alternative", labels[k]},
                        {"count", table.counts[k]},
                        {"freq", freq[k]},
                        {"exact", exact[k]},
                        {"sigma", sigma(k)}});
      }
      j["rows"] = std::move(rows);
      os << j.dump(2) << "\n";
      break;
    }
    case Format::kTable: {
      os << "# scenario " << sc.name << ", seed " << seed << ", generator " << table.generator
         << ", trials " << table.trials << "\n";
      std::vector<std::vector<std::string>> rows{{"alternative", "count", "freq", "exact", "sigma"}};
      for (std::size_t k = 0; k < labels.size(); ++k) {
        rows.push_back({labels[k], std::to_string(table.counts[k]), format_short(freq[k]),
                        format_short(exact[k]), format_short(sigma(k))});
      }
      os << align_columns(rows);
      break;
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knowability contexts: probability evaluation, rule feasibility and oracles",
               "knowctx"};
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "Replay a scenario file and print its state trace");
  eval->add_option("--scenario", o.scenario, "Scenario file (JSON)")->required();
  eval->add_option("--gamma", o.gamma, "Rule exponent: f(x) = |x|^(2 gamma); default 1");
  add_common(eval, o.common, false);

  auto* feas = app.add_subcommand("feasibility", "Search for amplitudes satisfying a rule");
  feas->add_option("--shape", o.shape, "M,M'")->required();
  feas->add_option("--gamma", o.gamma, "Rule exponent")->required();
  feas->add_option("--restarts", o.restarts, "Solver restarts")->capture_default_str();
  feas->add_option("--max-iterations", o.max_iterations, "Iterations per restart")
      ->capture_default_str();
  add_common(feas, o.common, true);

  auto* scan = app.add_subcommand("scan", "Feasibility verdicts over a grid of shapes and rules");
  scan->add_option("--m", o.m_range, "Range of M, lo..hi")->capture_default_str();
  scan->add_option("--m-prime", o.m_prime_range, "Range of M', lo..hi")->capture_default_str();
  scan->add_option("--gammas", o.gammas, "Comma-separated exponents")->capture_default_str();
  scan->add_option("--restarts", o.restarts, "Solver restarts per cell")->capture_default_str();
  scan->add_option("--max-iterations", o.max_iterations, "Iterations per restart")
      ->capture_default_str();
  add_common(scan, o.common, true);

  auto* mc = app.add_subcommand("mc", "Monte Carlo frequencies of a fully observed scenario");
  mc->add_option("--scenario", o.scenario, "Scenario file (JSON)")->required();
  mc->add_option("--trials", o.trials, "Number of trials")->capture_default_str();
  mc->add_option("--workers", o.workers, "Worker threads")->capture_default_str();
  add_common(mc, o.common, true);

  auto* demo = app.add_subcommand("demo", "Run a built-in interferometer scenario");
  std::string demo_help = "One of:";
  for (const Demo& d : demos()) demo_help += "\n  " + d.name + "  " + d.summary;
  demo->add_option("name", o.demo, demo_help)->required();
  demo->add_option("--export", o.export_path, "Also write the scenario to this file");
  add_common(demo, o.common, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::ostringstream report;
  int code = kExitOk;
  try {
    if (*eval) code = cmd_eval(o, report);
    else if (*feas) code = cmd_feasibility(o, report);
    else if (*scan) code = cmd_scan(o, report);
    else if (*mc) code = cmd_mc(o, report);
    else if (*demo) code = cmd_demo(o, report, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }

  if (o.common.output.empty()) {
    out << report.str();
  } else {
    std::ofstream f(o.common.output);
    if (!f) {
      err << "error: cannot write '" << o.common.output << "'\n";
      return kExitRuntime;
    }
    f << report.str();
  }
  return code;
}

}  // namespace knowctx::cli

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

#include "knowctx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "knowctx/errors.hpp"
#include "knowctx/random.hpp"
#include "knowctx/report_io.hpp"

namespace knowctx {
namespace {

void require_observed(const ContextNetwork& ctx) {
  for (std::size_t k = 0; k < ctx.layer_count(); ++k) {
    if (ctx.layer(k).knowability != Knowability::kL3) {
      throw Error(ErrorCode::kKnowabilityMismatch,
                  "layer " + std::to_string(k) + " is " +
                      std::string(to_string(ctx.layer(k).knowability)) +
                      "; only fully observed contexts can be sampled");
    }
  }
}

std::vector<double> cumulative(std::span<const Amplitude> amps, const ProbabilityRule& f) {
  std::vector<double> c;
  double total = 0.0;
  for (const Amplitude& a : amps) {
    total += f(a);
    c.push_back(total);
  }
  return c;
}

std::size_t draw(const std::vector<double>& cdf, double u) {
  const double scaled = u * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), scaled);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

}  // namespace

std::vector<double> FrequencyTable::freq() const {
  std::vector<double> f;
  for (std::uint64_t c : counts) {
    f.push_back(trials == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(trials));
  }
  return f;
}

FrequencyTable mc_sample_classical(const ContextNetwork& ctx, std::uint64_t trials,
                                   std::uint64_t seed, unsigned workers) {
  if (!ctx.rule().is_born()) {
    throw Error(ErrorCode::kUnsupportedRule, "sampling is defined for Born's rule only");
  }
  require_observed(ctx);
  workers = std::max(1u, workers);

  const ProbabilityRule& f = ctx.rule();
  const std::vector<double> first = cumulative(ctx.amplitudes().first_layer, f);
  std::vector<std::vector<std::vector<double>>> rows;
  for (std::size_t k = 1; k < ctx.layer_count(); ++k) {
    const AmplitudeMatrix& t = ctx.transition_into(k);
    std::vector<std::vector<double>> layer;
    for (std::size_t j = 0; j < t.rows(); ++j) layer.push_back(cumulative(t.row(j), f));
    rows.push_back(std::move(layer));
  }

  const std::size_t outcomes = ctx.layer(ctx.layer_count() - 1).size();
  const std::uint64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<std::vector<std::uint64_t>> partial(workers,
                                                  std::vector<std::uint64_t>(outcomes, 0));
  auto run = [&](unsigned w) {
    for (std::uint64_t b = w; b < blocks; b += workers) {
      Rng rng(derive_seed(seed, b));
      const std::uint64_t n = std::min(kTrialBlock, trials - b * kTrialBlock);
      for (std::uint64_t t = 0; t < n; ++t) {
        std::size_t j = draw(first, rng.uniform());
        for (const auto& layer : rows) j = draw(layer[j], rng.uniform());
        ++partial[w][j];
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  FrequencyTable table;
  table.counts.assign(outcomes, 0);
  for (const auto& p : partial) {
    for (std::size_t j = 0; j < outcomes; ++j) table.counts[j] += p[j];
  }
  table.trials = trials;
  table.seed = seed;
  table.generator = std::string(Rng::kName);
  return table;
}

PathDistribution enumerate_paths(const ContextNetwork& ctx) {
  require_observed(ctx);
  std::size_t paths = 1;
  for (const AlternativeSet& set : ctx.layers()) {
    if (paths > kMaxEnumeratedPaths / set.size()) {
      throw Error(ErrorCode::kPathLimitExceeded, "more than 10^6 paths to enumerate");
    }
    paths *= set.size();
  }

  const ProbabilityRule& f = ctx.rule();
  const std::size_t layers = ctx.layer_count();
  PathDistribution out;
  out.paths = paths;
  out.probs.assign(ctx.layer(layers - 1).size(), 0.0);
  std::vector<std::size_t> index(layers, 0);
  for (std::size_t p = 0; p < paths; ++p) {
    double weight = f(ctx.amplitudes().first_layer[index[0]]);
    for (std::size_t k = 1; k < layers && weight != 0.0; ++k) {
      weight *= f(ctx.transition_into(k)(index[k - 1], index[k]));
    }
    out.probs[index[layers - 1]] += weight;
    for (std::size_t k = layers; k-- > 0;) {
      if (++index[k] < ctx.layer(k).size()) break;
      index[k] = 0;
    }
  }
  return out;
}

std::string frequency_csv(const FrequencyTable& table, const std::vector<double>& exact,
                          const std::vector<std::string>& labels) {
  std::string out = "alternative,count,freq,exact,sigma\n";
  const std::vector<double> freq = table.freq();
  for (std::size_t j = 0; j < table.counts.size(); ++j) {
    const double p = j < exact.size() ? exact[j] : std::nan("");
    const double sigma =
        table.trials == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(table.trials));
    out += (j < labels.size() ? labels[j] : std::to_string(j)) + "," +
           std::to_string(table.counts[j]) + "," + format_full(freq[j]) + "," + format_full(p) +
           "," + format_full(sigma) + "\n";
  }
  return out;
}

}  // namespace knowctx

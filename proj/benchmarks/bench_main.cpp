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

#include <benchmark/benchmark.h>

#include <cmath>

#include "knowctx/engine.hpp"
#include "knowctx/feasibility.hpp"
#include "knowctx/oracle.hpp"
#include "knowctx/random.hpp"

namespace {

using namespace knowctx;

ContextNetwork chain(std::size_t layers, std::size_t width, std::uint64_t seed) {
  Rng rng(seed);
  auto unit = [&](std::size_t n) {
    std::vector<Amplitude> v(n);
    double s = 0.0;
    for (auto& x : v) {
      x = rng.complex_normal();
      s += std::norm(x);
    }
    for (auto& x : v) x /= std::sqrt(s);
    return v;
  };
  std::vector<LayerSpec> specs(layers, LayerSpec{width, Knowability::kL3});
  AmplitudeAssignment a;
  a.first_layer = unit(width);
  for (std::size_t k = 1; k < layers; ++k) {
    std::vector<std::vector<Amplitude>> rows;
    for (std::size_t j = 0; j < width; ++j) rows.push_back(unit(width));
    a.transitions.push_back(AmplitudeMatrix::from_rows(rows));
  }
  return build_context(specs, a, ProbabilityRule::born());
}

void BM_EvalClassical(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ContextNetwork ctx = chain(6, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(eval_classical(ctx, 5));
}
BENCHMARK(BM_EvalClassical)->Arg(2)->Arg(8)->Arg(32);

void BM_EvalInterference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ContextNetwork ctx = chain(6, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(eval_interference(ctx, 5));
}
BENCHMARK(BM_EvalInterference)->Arg(2)->Arg(8)->Arg(32);

void BM_EnumeratePaths(benchmark::State& state) {
  const ContextNetwork ctx = chain(static_cast<std::size_t>(state.range(0)), 4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_paths(ctx));
}
BENCHMARK(BM_EnumeratePaths)->Arg(3)->Arg(6)->Arg(9);

void BM_SolveBorn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ConstraintSystem sys = build_system({n, n}, ProbabilityRule::born());
  for (auto _ : state) benchmark::DoNotOptimize(solve(sys, 4, 0));
}
BENCHMARK(BM_SolveBorn)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SolveQuartic(benchmark::State& state) {
  const ConstraintSystem sys = build_system({2, 2}, ProbabilityRule::gamma_modulus(2));
  for (auto _ : state) benchmark::DoNotOptimize(solve(sys, 32, 0));
}
BENCHMARK(BM_SolveQuartic)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  const ContextNetwork ctx = chain(3, 3, 4);
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_sample_classical(ctx, 1'000'000, 0, workers));
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();

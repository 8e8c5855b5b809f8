// Copyright 2026 The qchaos Authors
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

// Serial reference kernels against their OpenMP counterparts. Run with
// QCHAOS_THREADS or OMP_NUM_THREADS set to the core count of interest.

#include <benchmark/benchmark.h>

#include "qchaos/basin.hpp"
#include "qchaos/julia.hpp"
#include "qchaos/parallel.hpp"

namespace {

using namespace qchaos;

const AttractorInventory &inv() {
  static const AttractorInventory i = build_inventory(ErrorAngle::from_degrees(4.5));
  return i;
}

void BM_RenderSerial(benchmark::State &st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) {
    auto g = render_serial(Surface::sphere(0.95), {-2, 2, -2, 2}, n, n, inv());
    benchmark::DoNotOptimize(g.labels.data());
  }
  st.SetItemsProcessed(st.iterations() * n * n);
}

void BM_RenderParallel(benchmark::State &st) {
  const int n = static_cast<int>(st.range(0));
  set_thread_count(0);
  for (auto _ : st) {
    auto g = render(Surface::sphere(0.95), {-2, 2, -2, 2}, n, n, inv());
    benchmark::DoNotOptimize(g.labels.data());
  }
  st.SetItemsProcessed(st.iterations() * n * n);
  st.counters["threads"] = thread_count();
}

MonteCarloParams mc_params(benchmark::State &st) {
  MonteCarloParams p;
  p.n = st.range(0);
  return p;
}

void BM_MonteCarloSerial(benchmark::State &st) {
  const auto p = mc_params(st);
  for (auto _ : st) benchmark::DoNotOptimize(monte_carlo_divergence_serial(ErrorAngle::from_degrees(4.5), p));
  st.SetItemsProcessed(st.iterations() * p.n);
}

void BM_MonteCarloParallel(benchmark::State &st) {
  const auto p = mc_params(st);
  set_thread_count(0);
  for (auto _ : st) benchmark::DoNotOptimize(monte_carlo_divergence(ErrorAngle::from_degrees(4.5), p));
  st.SetItemsProcessed(st.iterations() * p.n);
  st.counters["threads"] = thread_count();
}

void BM_RandomWalkJulia(benchmark::State &st) {
  BackwardOptions o;
  o.walks = static_cast<int>(st.range(0));
  set_thread_count(0);
  for (auto _ : st) {
    auto c = julia_cloud(ErrorAngle::from_degrees(4.5), 10000, BranchMode::kRandomBranch, 1, o);
    benchmark::DoNotOptimize(c.points.data());
  }
}

}  // namespace

BENCHMARK(BM_RenderSerial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RenderParallel)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomWalkJulia)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

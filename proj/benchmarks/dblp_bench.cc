// Copyright 2026 The dblp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <vector>

#include "benchmark/benchmark.h"
#include "dblp/bip.h"
#include "dblp/exact.h"
#include "dblp/gen.h"
#include "dblp/heuristic.h"

namespace dblp {
namespace {

Instance Generated(int locations, int populations) {
  GenConfig cfg;
  cfg.seed = 7;
  cfg.num_locations = locations;
  cfg.num_populations = populations;
  return Generate(cfg);
}

void BM_BuildFrontier(benchmark::State& state) {
  const Instance inst = Generated(static_cast<int>(state.range(0)), 100);
  for (auto _ : state) {
    Frontier f = BuildFrontier(inst);
    benchmark::DoNotOptimize(f.entries.data());
    state.counters["entries"] = static_cast<double>(f.entries.size());
  }
}
BENCHMARK(BM_BuildFrontier)->Arg(20)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_InitialSolution(benchmark::State& state) {
  const Instance inst = Generated(static_cast<int>(state.range(0)), 500);
  for (auto _ : state) benchmark::DoNotOptimize(InitialSolution(inst).total_cost);
}
BENCHMARK(BM_InitialSolution)->Arg(30)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_SolveExact(benchmark::State& state) {
  const Instance inst = Generated(static_cast<int>(state.range(0)), 100);
  SolveOptions options;
  for (auto _ : state) {
    ExactStats stats;
    benchmark::DoNotOptimize(SolveExact(inst, options, &stats).total_cost);
    state.counters["nodes"] = static_cast<double>(stats.nodes_explored);
  }
}
BENCHMARK(BM_SolveExact)->Arg(15)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

// Root relaxation of a dense covering program.
void BM_RelaxBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  bip::BinaryProgram bp;
  bp.num_vars = n;
  for (int i = 0; i < n; ++i) bp.objective.push_back(1.0 + (i * 37 % 11));
  for (int r = 0; r < n; ++r) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < n; ++i) {
      if ((i * 7 + r * 3) % 5 < 2) terms.push_back({i, 1.0});
    }
    bp.rows.push_back(bip::LinearRow::Make(terms, bip::Sense::kGreaterEqual, 1.0));
  }
  const std::vector<std::int8_t> free(n, -1);
  for (auto _ : state) benchmark::DoNotOptimize(bip::RelaxBound(bp, free));
}
BENCHMARK(BM_RelaxBound)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace dblp

BENCHMARK_MAIN();

// Copyright 2026 The patrol-eq Authors. All rights reserved.
//
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

#include <benchmark/benchmark.h>

#include <string>

#include "patrol/bilinear.hpp"
#include "patrol/det_search.hpp"
#include "patrol/dominance.hpp"
#include "patrol/genbench.hpp"
#include "patrol/markov.hpp"
#include "patrol/reduction.hpp"

namespace {

const std::string kFixtures = PATROL_FIXTURES_DIR;

void BM_Reduce(benchmark::State& state) {
  const auto g = patrol::LoadInstance(kFixtures + "/running_example.json");
  for (auto _ : state) benchmark::DoNotOptimize(patrol::Reduce(g));
}
BENCHMARK(BM_Reduce);

void BM_DetSearchRandom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<patrol::ReducedGraph> graphs;
  for (int k = 0; k < 16; ++k) {
    graphs.push_back(patrol::GenerateInstance({n, n * (n - 1) / 2 + 1, static_cast<std::uint64_t>(k)}));
  }
  patrol::SearchConfig c;
  c.time_budget_s = 5.0;
  size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(patrol::FindDeterministicStrategy(graphs[k++ % graphs.size()], c));
  }
}
BENCHMARK(BM_DetSearchRandom)->DenseRange(3, 7);

void BM_Dominance(benchmark::State& state) {
  const auto g = patrol::LoadInstance(kFixtures + "/running_example.json");
  const auto table = patrol::AllPairsShortestPaths(g);
  for (auto _ : state) {
    auto r = patrol::RemoveDominatedPatrollerActions(g, table);
    patrol::FillNondominated(*r);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Dominance);

void BM_EvaluateActions(benchmark::State& state) {
  const auto g = patrol::LoadInstance(kFixtures + "/running_example.json");
  auto r = patrol::RemoveDominatedPatrollerActions(g, patrol::AllPairsShortestPaths(g));
  patrol::FillNondominated(*r);
  const auto s = patrol::UniformStrategy(r->base);
  for (auto _ : state) benchmark::DoNotOptimize(patrol::EvaluateActions(s, *r));
}
BENCHMARK(BM_EvaluateActions);

void BM_MinmaxSolve(benchmark::State& state) {
  const auto g = patrol::LoadInstance(kFixtures + "/corridor-10.json");
  auto r = patrol::RemoveDominatedPatrollerActions(g, patrol::AllPairsShortestPaths(g));
  patrol::FillNondominated(*r);
  const auto problem = patrol::MinmaxProblem(*r);
  patrol::SolverConfig c;
  c.starts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(patrol::Maximize(problem, c));
}
BENCHMARK(BM_MinmaxSolve)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

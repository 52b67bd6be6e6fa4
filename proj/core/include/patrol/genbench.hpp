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

#ifndef PATROL_GENBENCH_HPP_
#define PATROL_GENBENCH_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "patrol/det_search.hpp"
#include "patrol/instance.hpp"
#include "patrol/reduction.hpp"

namespace patrol {

struct GenSpec {
  int n = 3;
  int m = 3;  // arcs, self-loops not counted
  std::uint64_t rng_seed = 0;
};

// Inclusive range d is drawn from for a graph with these shortest paths.
std::pair<int, int> DeadlineRange(const ShortestPathTable& wbar);

// Random strongly connected G' with unit weights, every vertex a target.
// Throws InputError unless 2 <= n and n <= m <= (n - 1) n.
ReducedGraph GenerateInstance(const GenSpec& spec);

struct DetCell {
  std::string config;
  int n = 0;
  int trials = 0;
  int feasible = 0;
  int infeasible = 0;
  int timeout = 0;
  int verify_failures = 0;  // Feasible cycles rejected by CheckCycle
  double termination_pct = 0.0;
  // Over terminated runs, milliseconds.
  double mean_ms = 0.0;
  double std_ms = 0.0;
  double max_ms = 0.0;
  double min_ms = 0.0;
};

struct MixedRow {
  std::string name;
  int vertices = 0;
  int targets = 0;
  int complete = 0;       // |T| * |V|
  int reduced_p = 0;      // |T| * |V_r|
  int reduced_pi = 0;     // sum_t |V_t|
  bool count_ok = false;  // reduced_pi == SubproblemCount()
  // Filled when solving is requested.
  std::string stage;
  double patroller_eu = 0.0;
  double solve_ms = 0.0;
};

struct BenchReport {
  std::string header;
  std::vector<DetCell> det;
  std::vector<MixedRow> mixed;
};

std::string DescribeConfig(const SearchConfig& c);
// Inverse of DescribeConfig: "min_visits+rtb+lsc+ifc". Throws InputError.
SearchConfig ParseConfigSpec(const std::string& text);

struct DetBenchSpec {
  std::vector<SearchConfig> configs;
  std::vector<int> sizes;
  int trials = 100;
  double budget_s = 60.0;
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Instance k for size n is shared across configs.
BenchReport RunDetBenchmark(const DetBenchSpec& spec);

struct MixedBenchSpec {
  bool solve = false;
  std::uint64_t seed = 0;
  int jobs = 1;
};

BenchReport RunMixedBenchmark(
    const std::vector<std::pair<std::string, PatrolInstance>>& instances,
    const MixedBenchSpec& spec);

// Aligned-column rendering.
std::string RenderTable(const BenchReport& report);

}  // namespace patrol

#endif  // PATROL_GENBENCH_HPP_

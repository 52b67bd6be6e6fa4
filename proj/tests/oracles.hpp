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

// Brute-force reference implementations used by the unit and acceptance
// tests. Deliberately naive; none of them call the code under test except
// for plain data accessors.

#ifndef PATROL_TESTS_ORACLES_HPP_
#define PATROL_TESTS_ORACLES_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "patrol/dominance.hpp"
#include "patrol/instance.hpp"
#include "patrol/markov.hpp"
#include "patrol/reduction.hpp"

namespace patrol::oracle {

enum class Tri { kYes, kNo, kUnknown };

// BFS over the adjacency matrix; kUnreachable when no path.
std::vector<int> Bfs(const PatrolInstance& g, int source);

// Capture probability by enumerating every d(t)-step walk from z.
double CaptureByPaths(const MarkovStrategy& s, int t, int z, const PatrolInstance& g);

// Every walk from ip of length <= steps that first hits t passes through i.
bool AllWalksVisit(const PatrolInstance& g, int t, int ip, int i, int steps);

// V_t straight from the walk definition, with the lexicographic rule for
// mutual dominance.
std::vector<int> Nondominated(const PatrolInstance& g, int t);

// Depth-first enumeration of closed walks on G' of temporal length <= bound,
// each checked with CycleOk.
Tri CycleWithin(const ReducedGraph& r, long long bound, std::size_t node_cap);

// Exact: cycle detection in the graph of (vertex, ages) states.
Tri CycleExact(const ReducedGraph& r, std::size_t state_cap);

// Closed, covers every target, arcs exist, every gap (wrap included)
// within d. Written independently of CheckCycle.
bool CycleOk(const std::vector<int>& seq, const ReducedGraph& r);

IntruderAction BestResponseByPaths(const MarkovStrategy& s, const ReducedInstance& r);

// Connected undirected instance with self-loops; `targets` distinct targets,
// d uniform in [1, max_d], values in [1, 10].
PatrolInstance RandomInstance(std::mt19937_64& rng, int n, int targets, int max_d,
                              double extra_edge_prob = 0.3);

// Dirichlet(1) rows over the allowed arcs; every allowed entry >= floor.
MarkovStrategy RandomStrategy(const PatrolInstance& g, std::mt19937_64& rng,
                              double floor = 0.0);

// Complete graph on n vertices, every vertex a target.
PatrolInstance Clique(int n, int d, double v_p, double v_i, double epsilon = 1.0);

}  // namespace patrol::oracle

#endif  // PATROL_TESTS_ORACLES_HPP_

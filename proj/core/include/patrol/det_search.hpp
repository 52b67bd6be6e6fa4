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

#ifndef PATROL_DET_SEARCH_HPP_
#define PATROL_DET_SEARCH_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "patrol/reduction.hpp"

namespace patrol {

struct PatrolCycle {
  std::vector<int> seq;  // indices into ReducedGraph::ids; seq.front() == seq.back()
  int temporal_length = 0;
};

int TemporalLength(const std::vector<int>& seq, const ReducedGraph& r);

enum class Heuristic { kLex, kRandom, kMaxArcs, kMinArcs, kMinVisits, kMaxD, kMinD };

std::string HeuristicName(Heuristic h);
// Accepts the names printed by HeuristicName(); throws InputError.
Heuristic ParseHeuristic(const std::string& name);

struct SearchConfig {
  Heuristic heuristic = Heuristic::kMinVisits;
  bool rtb = true;
  bool lsc = true;
  bool ifc = true;
  double time_budget_s = 60.0;
  std::uint64_t rng_seed = 0;
  // Forces sigma(1) when >= 0; otherwise the heuristic picks it.
  int root = -1;
};

enum class Verdict { kFeasible, kInfeasible, kTimeout };

std::string VerdictName(Verdict v);

struct SearchResult {
  Verdict verdict = Verdict::kInfeasible;
  std::optional<PatrolCycle> cycle;
  std::uint64_t nodes_expanded = 0;
  double elapsed_ms = 0.0;
};

// Invoked once per search-tree node with the prefix sigma(1..j-1) and
// whether the node met the stopping rule (closed and complete).
using NodeObserver = std::function<void(const std::vector<int>& prefix, bool terminal)>;

SearchResult FindDeterministicStrategy(const ReducedGraph& r,
                                       const SearchConfig& config,
                                       const NodeObserver& observer = nullptr);

// Domain F_j for the given prefix (j = prefix.size() + 1), ascending index.
std::vector<int> ForwardCheck(const std::vector<int>& prefix,
                              const ReducedGraph& r,
                              const ShortestPathTable& wbar);

bool CheckCycle(const std::vector<int>& seq, const ReducedGraph& r);

// Back-and-forth sequence for path-shaped G'. Throws InputError when G' is
// not a path (ignoring self-loops).
SearchResult LinearFeasibility(const ReducedGraph& r);

// Cycle validity restated on G for a lifted vertex sequence: one turn
// per arc, every target visited, gaps within d(t).
bool CheckLiftedCycle(const std::vector<std::string>& seq, const PatrolInstance& g);

}  // namespace patrol

#endif  // PATROL_DET_SEARCH_HPP_

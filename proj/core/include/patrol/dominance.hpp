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

#ifndef PATROL_DOMINANCE_HPP_
#define PATROL_DOMINANCE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "patrol/instance.hpp"
#include "patrol/reduction.hpp"

namespace patrol {

// G_r with the surviving observation vertices per target.
struct ReducedInstance {
  PatrolInstance base;
  std::vector<std::string> removed_vertices;
  // vt[t] for every target index t of `base`; empty for non-targets.
  std::vector<std::vector<int>> vt;

  // Sum over targets of |V_t|: number of leader-follower subproblems.
  int SubproblemCount() const;
};

// Identity reduction: no vertex removed, every vertex observable.
ReducedInstance Unreduced(const PatrolInstance& g);

// Distance and path passes repeated until stable. nullopt when the surviving graph is
// not strongly connected. Targets are never removed.
std::optional<ReducedInstance> RemoveDominatedPatrollerActions(
    const PatrolInstance& g, const ShortestPathTable& table);

inline constexpr std::size_t kDefaultNodeCap = 10'000'000;

// V_t from the tree of non-backtracking walks into t of length <= d(t).
// Throws ResourceError past `node_cap` tree nodes.
std::vector<int> ComputeNondominatedIntruderVertices(
    const ReducedInstance& reduced, int t,
    std::size_t node_cap = kDefaultNodeCap);

// Fills reduced.vt for every target; `jobs` <= 0 uses all cores.
void FillNondominated(ReducedInstance& reduced,
                      std::size_t node_cap = kDefaultNodeCap, int jobs = 1);

}  // namespace patrol

#endif  // PATROL_DOMINANCE_HPP_

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

#ifndef PATROL_REDUCTION_HPP_
#define PATROL_REDUCTION_HPP_

#include <string>
#include <vector>

#include "patrol/instance.hpp"

namespace patrol {

// dist(i, j) in turns (one per arc), kUnreachable when no path exists.
struct ShortestPathTable {
  int n = 0;
  std::vector<int> dist;

  int at(int i, int j) const { return dist[i * n + j]; }
};

ShortestPathTable AllPairsShortestPaths(const PatrolInstance& g);

// G' = (T, A', w, d). Index k refers to ids[k]; `origin` maps k back to the
// vertex index in the source instance when one exists.
struct ReducedGraph {
  std::vector<std::string> ids;
  std::vector<int> origin;
  std::vector<std::uint8_t> arcs;  // m x m, self-loops included
  std::vector<int> w;              // m x m, 0 where no arc
  std::vector<int> d;
  std::vector<double> v_p;
  std::vector<double> v_i;
  double epsilon = 1.0;
  // back_paths[i * m + j]: vertex ids of one shortest target-free path.
  std::vector<std::vector<std::string>> back_paths;
  // Ordered target pairs with no path in G.
  std::vector<std::pair<int, int>> unreachable;

  int m() const { return static_cast<int>(ids.size()); }
  bool arc(int i, int j) const { return arcs[i * m() + j] != 0; }
  int weight(int i, int j) const { return w[i * m() + j]; }
  int index_of(const std::string& id) const;
  int max_deadline() const;
};

// Bare G' with unit weights and self-loops; used by generators and tests.
ReducedGraph MakeReducedGraph(const std::vector<std::string>& ids,
                              const std::vector<int>& d);
void SetReducedArc(ReducedGraph& r, int i, int j, int weight);

ReducedGraph Reduce(const PatrolInstance& g);
ReducedGraph Reduce(const PatrolInstance& g, const ShortestPathTable& table);

// Shortest paths over G' weights (w-bar), Floyd-Warshall.
ShortestPathTable ReducedShortestPaths(const ReducedGraph& r);

// Expands a G' cycle into a vertex sequence over G.
std::vector<std::string> LiftCycle(const std::vector<int>& cycle,
                                   const ReducedGraph& r);

std::vector<std::string> ValidateReduced(const ReducedGraph& r);

}  // namespace patrol

#endif  // PATROL_REDUCTION_HPP_

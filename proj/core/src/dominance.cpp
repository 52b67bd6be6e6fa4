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

#include "patrol/dominance.hpp"

#include <algorithm>
#include <numeric>

#include "patrol/parallel.hpp"

namespace patrol {

int ReducedInstance::SubproblemCount() const {
  int total = 0;
  for (int t : base.targets()) total += static_cast<int>(vt[t].size());
  return total;
}

ReducedInstance Unreduced(const PatrolInstance& g) {
  ReducedInstance r;
  r.base = g;
  r.vt.assign(g.n(), {});
  std::vector<int> all(g.n());
  std::iota(all.begin(), all.end(), 0);
  for (int t : g.targets()) r.vt[t] = all;
  return r;
}

namespace {

bool StronglyConnected(const ShortestPathTable& table) {
  for (int v : table.dist) {
    if (v >= kUnreachable) return false;
  }
  return true;
}

}  // namespace

std::optional<ReducedInstance> RemoveDominatedPatrollerActions(
    const PatrolInstance& g, const ShortestPathTable& table) {
  std::vector<int> keep(g.n());
  std::iota(keep.begin(), keep.end(), 0);
  PatrolInstance cur = g;
  ShortestPathTable dist = table;
  while (true) {
    // Distance pass: vertices too far from some target.
    std::vector<int> step1;
    const std::vector<int> T = cur.targets();
    for (int v = 0; v < cur.n(); ++v) {
      bool ok = cur.is_target[v];
      if (!ok) {
        ok = true;
        for (int t : T) ok = ok && dist.at(v, t) <= cur.deadline(t);
      }
      if (ok) step1.push_back(v);
    }
    PatrolInstance h = InducedSubgraph(cur, step1);
    ShortestPathTable hd = AllPairsShortestPaths(h);
    if (!StronglyConnected(hd)) return std::nullopt;

    // Path pass: vertices off every shortest target-to-target path.
    const std::vector<int> HT = h.targets();
    std::vector<int> step2;
    for (int v = 0; v < h.n(); ++v) {
      bool on_path = h.is_target[v];
      for (size_t a = 0; a < HT.size() && !on_path; ++a) {
        for (size_t b = 0; b < HT.size() && !on_path; ++b) {
          if (a == b) continue;
          on_path = hd.at(HT[a], v) + hd.at(v, HT[b]) == hd.at(HT[a], HT[b]);
        }
      }
      if (on_path) step2.push_back(v);
    }
    PatrolInstance next = InducedSubgraph(h, step2);
    ShortestPathTable nd = AllPairsShortestPaths(next);
    if (!StronglyConnected(nd)) return std::nullopt;
    const bool stable = next.n() == cur.n();
    cur = std::move(next);
    dist = std::move(nd);
    if (stable) break;
  }

  ReducedInstance out;
  out.base = cur;
  out.vt.assign(cur.n(), {});
  for (int v = 0; v < g.n(); ++v) {
    if (cur.index_of(g.ids[v]) < 0) out.removed_vertices.push_back(g.ids[v]);
  }
  return out;
}

std::vector<int> ComputeNondominatedIntruderVertices(
    const ReducedInstance& reduced, int t, std::size_t node_cap) {
  const PatrolInstance& g = reduced.base;
  const int n = g.n();
  const int depth_limit = g.deadline(t);
  // dom[i * n + x]: every walk from x into t seen so far passes through i.
  std::vector<std::uint8_t> dom(static_cast<size_t>(n) * n, 1);
  std::vector<std::uint8_t> present(n, 0);
  std::vector<int> on_path(n, 0);

  struct Node {
    int vertex;
    int father;
    int depth;
    int next_child;
  };
  std::vector<Node> stack{{t, -1, 0, 0}};
  std::size_t nodes = 1;
  while (!stack.empty()) {
    Node& q = stack.back();
    const bool expandable = q.depth < depth_limit && (q.depth == 0 || q.vertex != t);
    int child = -1;
    if (expandable) {
      for (int y = q.next_child; y < n; ++y) {
        // Child y: the patroller moves y -> q.vertex.
        if (y != q.vertex && y != q.father && g.arc(y, q.vertex)) {
          child = y;
          break;
        }
      }
    }
    if (child < 0) {
      if (q.depth > 0) --on_path[q.vertex];
      stack.pop_back();
      continue;
    }
    q.next_child = child + 1;
    if (++nodes > node_cap) {
      throw ResourceError("dominance tree for target '" + g.ids[t] + "' exceeds " +
                          std::to_string(node_cap) + " nodes");
    }
    if (child != t) {
      present[child] = 1;
      for (int i = 0; i < n; ++i) {
        if (on_path[i] == 0) dom[static_cast<size_t>(i) * n + child] = 0;
      }
    }
    const int depth = q.depth + 1;
    const int father = q.vertex;
    ++on_path[child];
    stack.push_back({child, father, depth, 0});
  }

  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    bool dominated = false;
    if (i != t && present[i]) {
      for (int x = 0; x < n && !dominated; ++x) {
        if (x == i || x == t || !present[x] || !dom[static_cast<size_t>(i) * n + x]) continue;
        const bool mutual = dom[static_cast<size_t>(x) * n + i] != 0;
        dominated = !mutual || g.ids[x] < g.ids[i];
      }
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

void FillNondominated(ReducedInstance& reduced, std::size_t node_cap, int jobs) {
  reduced.vt.assign(reduced.base.n(), {});
  const std::vector<int> T = reduced.base.targets();
  ParallelFor(static_cast<int>(T.size()), jobs, [&](int k) {
    reduced.vt[T[k]] = ComputeNondominatedIntruderVertices(reduced, T[k], node_cap);
  });
}

}  // namespace patrol

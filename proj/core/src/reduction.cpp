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

#include "patrol/reduction.hpp"

#include <algorithm>
#include <deque>

namespace patrol {

namespace {

// BFS from `src`; when `through` is non-null only vertices with through[v]
// (or src itself) are expanded. `reverse` walks arcs backwards.
std::vector<int> Bfs(const PatrolInstance& g, int src,
                     const std::vector<bool>* through, bool reverse) {
  const int n = g.n();
  std::vector<int> dist(n, kUnreachable);
  std::deque<int> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u != src && through != nullptr && !(*through)[u]) continue;
    for (int v = 0; v < n; ++v) {
      bool arc = reverse ? g.arc(v, u) : g.arc(u, v);
      if (arc && dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

ShortestPathTable AllPairsShortestPaths(const PatrolInstance& g) {
  ShortestPathTable t;
  t.n = g.n();
  t.dist.resize(static_cast<size_t>(t.n) * t.n);
  for (int s = 0; s < t.n; ++s) {
    auto row = Bfs(g, s, nullptr, false);
    std::copy(row.begin(), row.end(), t.dist.begin() + static_cast<size_t>(s) * t.n);
  }
  return t;
}

int ReducedGraph::index_of(const std::string& id) const {
  auto it = std::find(ids.begin(), ids.end(), id);
  return it == ids.end() ? -1 : static_cast<int>(it - ids.begin());
}

int ReducedGraph::max_deadline() const {
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

ReducedGraph MakeReducedGraph(const std::vector<std::string>& ids,
                              const std::vector<int>& d) {
  ReducedGraph r;
  const int m = static_cast<int>(ids.size());
  r.ids = ids;
  r.origin.assign(m, -1);
  r.arcs.assign(static_cast<size_t>(m) * m, 0);
  r.w.assign(static_cast<size_t>(m) * m, 0);
  r.d = d;
  r.v_p.assign(m, 1.0);
  r.v_i.assign(m, 1.0);
  r.back_paths.assign(static_cast<size_t>(m) * m, {});
  for (int i = 0; i < m; ++i) SetReducedArc(r, i, i, 1);
  return r;
}

void SetReducedArc(ReducedGraph& r, int i, int j, int weight) {
  const int m = r.m();
  r.arcs[i * m + j] = 1;
  r.w[i * m + j] = weight;
  if (weight == 1) r.back_paths[i * m + j] = {r.ids[i], r.ids[j]};
}

ReducedGraph Reduce(const PatrolInstance& g) {
  return Reduce(g, AllPairsShortestPaths(g));
}

ReducedGraph Reduce(const PatrolInstance& g, const ShortestPathTable& table) {
  const std::vector<int> T = g.targets();
  const int m = static_cast<int>(T.size());
  std::vector<std::string> ids;
  std::vector<int> d;
  for (int t : T) {
    ids.push_back(g.ids[t]);
    d.push_back(g.deadline(t));
  }
  ReducedGraph r;
  r.ids = ids;
  r.origin = T;
  r.arcs.assign(static_cast<size_t>(m) * m, 0);
  r.w.assign(static_cast<size_t>(m) * m, 0);
  r.d = d;
  r.epsilon = g.epsilon;
  r.back_paths.assign(static_cast<size_t>(m) * m, {});
  for (int t : T) {
    r.v_p.push_back(g.patroller_value(t));
    r.v_i.push_back(g.intruder_value(t));
  }

  std::vector<bool> non_target(g.n());
  for (int v = 0; v < g.n(); ++v) non_target[v] = !g.is_target[v];

  std::vector<std::vector<int>> from(m), to(m);
  for (int k = 0; k < m; ++k) {
    from[k] = Bfs(g, T[k], &non_target, false);
    to[k] = Bfs(g, T[k], &non_target, true);
  }

  for (int a = 0; a < m; ++a) {
    r.arcs[a * m + a] = 1;
    r.w[a * m + a] = 1;
    r.back_paths[a * m + a] = {ids[a], ids[a]};
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      const int full = table.at(T[a], T[b]);
      if (full >= kUnreachable) {
        r.unreachable.emplace_back(a, b);
        continue;
      }
      if (from[a][T[b]] != full) continue;
      r.arcs[a * m + b] = 1;
      r.w[a * m + b] = full;
      // Greedy walk choosing the smallest id that stays on a target-free
      // shortest path.
      std::vector<std::string> path{g.ids[T[a]]};
      int u = T[a];
      for (int left = full; left > 0; --left) {
        int best = -1;
        for (int v = 0; v < g.n(); ++v) {
          if (v == u || !g.arc(u, v)) continue;
          bool ok = left == 1 ? v == T[b]
                              : (non_target[v] && to[b][v] == left - 1);
          if (ok && (best < 0 || g.ids[v] < g.ids[best])) best = v;
        }
        path.push_back(g.ids[best]);
        u = best;
      }
      r.back_paths[a * m + b] = std::move(path);
    }
  }
  return r;
}

ShortestPathTable ReducedShortestPaths(const ReducedGraph& r) {
  ShortestPathTable t;
  const int m = r.m();
  t.n = m;
  t.dist.assign(static_cast<size_t>(m) * m, kUnreachable);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (r.arc(i, j)) t.dist[i * m + j] = r.weight(i, j);
    }
    t.dist[i * m + i] = 0;
  }
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      const int ik = t.dist[i * m + k];
      if (ik >= kUnreachable) continue;
      for (int j = 0; j < m; ++j) {
        const int kj = t.dist[k * m + j];
        if (kj < kUnreachable && ik + kj < t.dist[i * m + j]) t.dist[i * m + j] = ik + kj;
      }
    }
  }
  return t;
}

std::vector<std::string> LiftCycle(const std::vector<int>& cycle,
                                   const ReducedGraph& r) {
  if (cycle.empty()) return {};
  std::vector<std::string> out{r.ids[cycle[0]]};
  for (size_t k = 1; k < cycle.size(); ++k) {
    const auto& path = r.back_paths[cycle[k - 1] * r.m() + cycle[k]];
    if (path.size() < 2) {
      throw std::logic_error("no back path for arc " + r.ids[cycle[k - 1]] + " -> " + r.ids[cycle[k]]);
    }
    out.insert(out.end(), path.begin() + 1, path.end());
  }
  return out;
}

std::vector<std::string> ValidateReduced(const ReducedGraph& r) {
  std::vector<std::string> out;
  const int m = r.m();
  if (m == 0) out.push_back("targets: G' needs at least one vertex");
  if (r.arcs.size() != static_cast<size_t>(m) * m || r.w.size() != r.arcs.size()) {
    out.push_back("arcs: adjacency must cover exactly T x T");
    return out;
  }
  for (int i = 0; i < m; ++i) {
    if (r.d[i] < 1) out.push_back("d: penetration time must be >= 1 (target '" + r.ids[i] + "')");
    for (int j = 0; j < m; ++j) {
      if (r.arc(i, j) && r.weight(i, j) < 1) {
        out.push_back("weights: arc " + r.ids[i] + " -> " + r.ids[j] + " must have weight >= 1");
      }
    }
  }
  if (!(r.epsilon > 0)) out.push_back("epsilon: must be positive");
  return out;
}

}  // namespace patrol

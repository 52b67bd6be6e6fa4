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

#include "patrol/det_search.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <tuple>

namespace patrol {

namespace {

using Clock = std::chrono::steady_clock;

bool IsMetric(const ReducedGraph& r, const ShortestPathTable& wbar) {
  for (int i = 0; i < r.m(); ++i) {
    for (int j = 0; j < r.m(); ++j) {
      if (i != j && r.arc(i, j) && r.weight(i, j) != wbar.at(i, j)) return false;
    }
  }
  return true;
}

// Incremental occurrence bookkeeping for a prefix sigma(1..s).
struct Prefix {
  std::vector<int> seq;
  std::vector<int> time;      // time[k]: turns elapsed when seq[k] is reached
  std::vector<int> count;     // o_i
  std::vector<int> last;      // position of the last occurrence, -1 if none
  std::vector<int> saved;     // previous `last` of the pushed vertex
  int distinct = 0;

  explicit Prefix(int m) : count(m, 0), last(m, -1) {}

  void Push(int v, int dt) {
    time.push_back(time.empty() ? 0 : time.back() + dt);
    saved.push_back(last[v]);
    if (count[v]++ == 0) ++distinct;
    last[v] = static_cast<int>(seq.size());
    seq.push_back(v);
  }

  void Pop() {
    int v = seq.back();
    seq.pop_back();
    time.pop_back();
    last[v] = saved.back();
    saved.pop_back();
    if (--count[v] == 0) --distinct;
  }
};

bool AddWithin(long long a, int bound) { return a <= bound; }

// Forward check of one prefix against an explicit bookkeeping state.
// `check_self` selects whether the candidate's own deadline from the root is
// checked too.
std::vector<int> Domain(const Prefix& p, const ReducedGraph& r,
                        const ShortestPathTable& wbar, bool check_self) {
  const int m = r.m();
  const int first = p.seq.front();
  const int s = p.seq.back();
  const long long L = p.time.back();
  std::vector<int> out;
  for (int i = 0; i < m; ++i) {
    if (!r.arc(s, i)) continue;
    const long long arrive = L + r.weight(s, i);
    if (check_self) {
      if (p.count[i] == 0) {
        const int back = wbar.at(i, first);
        if (back >= kUnreachable || !AddWithin(arrive + back, r.d[i])) continue;
      } else if (!AddWithin(arrive - p.time[p.last[i]], r.d[i])) {
        continue;
      }
    }
    bool ok = true;
    for (int k = 0; k < m && ok; ++k) {
      if (k == i) continue;
      const int to_k = wbar.at(i, k);
      if (to_k >= kUnreachable) {
        ok = false;
      } else if (p.count[k] == 0) {
        const int back = wbar.at(k, first);
        ok = back < kUnreachable && AddWithin(arrive + to_k + back, r.d[k]);
      } else {
        ok = AddWithin(arrive - p.time[p.last[k]] + to_k, r.d[k]);
      }
    }
    if (ok) out.push_back(i);
  }
  return out;
}

class Orderer {
 public:
  Orderer(const ReducedGraph& r, const SearchConfig& c)
      : r_(r), config_(c), rng_(c.rng_seed), rank_(r.m()), outdeg_(r.m(), 0) {
    std::vector<int> idx(r.m());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return r.ids[a] < r.ids[b]; });
    for (int k = 0; k < r.m(); ++k) rank_[idx[k]] = k;
    for (int i = 0; i < r.m(); ++i) {
      for (int j = 0; j < r.m(); ++j) outdeg_[i] += (i != j && r.arc(i, j));
    }
  }

  void Sort(std::vector<int>& cand, const std::vector<int>& count) {
    const bool random_ties = config_.rtb || config_.heuristic == Heuristic::kRandom;
    std::vector<std::tuple<long long, std::uint64_t, int, int>> keyed;
    keyed.reserve(cand.size());
    for (int v : cand) {
      long long key = 0;
      switch (config_.heuristic) {
        case Heuristic::kLex: key = rank_[v]; break;
        case Heuristic::kRandom: key = 0; break;
        case Heuristic::kMaxArcs: key = -outdeg_[v]; break;
        case Heuristic::kMinArcs: key = outdeg_[v]; break;
        case Heuristic::kMinVisits: key = count[v]; break;
        case Heuristic::kMaxD: key = -r_.d[v]; break;
        case Heuristic::kMinD: key = r_.d[v]; break;
      }
      std::uint64_t tie = random_ties ? rng_() : 0;
      keyed.emplace_back(key, tie, rank_[v], v);
    }
    std::sort(keyed.begin(), keyed.end());
    for (size_t k = 0; k < cand.size(); ++k) cand[k] = std::get<3>(keyed[k]);
  }

 private:
  const ReducedGraph& r_;
  SearchConfig config_;
  std::mt19937_64 rng_;
  std::vector<int> rank_;
  std::vector<int> outdeg_;
};

struct Frame {
  std::vector<int> domain;
  size_t next = 0;
};

}  // namespace

int TemporalLength(const std::vector<int>& seq, const ReducedGraph& r) {
  int total = 0;
  for (size_t k = 1; k < seq.size(); ++k) total += r.weight(seq[k - 1], seq[k]);
  return total;
}

std::string HeuristicName(Heuristic h) {
  switch (h) {
    case Heuristic::kLex: return "lex";
    case Heuristic::kRandom: return "random";
    case Heuristic::kMaxArcs: return "max_arcs";
    case Heuristic::kMinArcs: return "min_arcs";
    case Heuristic::kMinVisits: return "min_visits";
    case Heuristic::kMaxD: return "max_d";
    case Heuristic::kMinD: return "min_d";
  }
  return "?";
}

Heuristic ParseHeuristic(const std::string& name) {
  for (Heuristic h : {Heuristic::kLex, Heuristic::kRandom, Heuristic::kMaxArcs,
                      Heuristic::kMinArcs, Heuristic::kMinVisits, Heuristic::kMaxD,
                      Heuristic::kMinD}) {
    if (HeuristicName(h) == name) return h;
  }
  throw InputError("unknown heuristic '" + name + "'");
}

std::string VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kFeasible: return "feasible";
    case Verdict::kInfeasible: return "infeasible";
    case Verdict::kTimeout: return "timeout";
  }
  return "?";
}

bool CheckCycle(const std::vector<int>& seq, const ReducedGraph& r) {
  const int m = r.m();
  const size_t s = seq.size();
  if (s < 2 || seq.front() != seq.back()) return false;
  for (int v : seq) {
    if (v < 0 || v >= m) return false;
  }
  std::vector<long long> time(s, 0);
  for (size_t k = 1; k < s; ++k) {
    if (!r.arc(seq[k - 1], seq[k])) return false;
    time[k] = time[k - 1] + r.weight(seq[k - 1], seq[k]);
  }
  std::vector<long long> first(m, -1), prev(m, -1);
  for (size_t k = 0; k < s; ++k) {
    const int v = seq[k];
    if (prev[v] >= 0 && time[k] - prev[v] > r.d[v]) return false;
    if (first[v] < 0) first[v] = time[k];
    prev[v] = time[k];
  }
  for (int v = 0; v < m; ++v) {
    if (first[v] < 0) return false;
    if (first[v] + (time[s - 1] - prev[v]) > r.d[v]) return false;
  }
  return true;
}

bool CheckLiftedCycle(const std::vector<std::string>& seq, const PatrolInstance& g) {
  const size_t s = seq.size();
  if (s < 2 || seq.front() != seq.back()) return false;
  std::vector<int> idx(s);
  for (size_t k = 0; k < s; ++k) {
    idx[k] = g.index_of(seq[k]);
    if (idx[k] < 0) return false;
    if (k > 0 && !g.arc(idx[k - 1], idx[k])) return false;
  }
  const long long len = static_cast<long long>(s) - 1;
  std::vector<long long> first(g.n(), -1), prev(g.n(), -1);
  for (size_t k = 0; k < s; ++k) {
    const int v = idx[k];
    if (!g.is_target[v]) continue;
    if (prev[v] >= 0 && static_cast<long long>(k) - prev[v] > g.deadline(v)) return false;
    if (first[v] < 0) first[v] = static_cast<long long>(k);
    prev[v] = static_cast<long long>(k);
  }
  for (int t : g.targets()) {
    if (first[t] < 0) return false;
    if (first[t] + (len - prev[t]) > g.deadline(t)) return false;
  }
  return true;
}

std::vector<int> ForwardCheck(const std::vector<int>& prefix,
                              const ReducedGraph& r,
                              const ShortestPathTable& wbar) {
  Prefix p(r.m());
  for (size_t k = 0; k < prefix.size(); ++k) {
    p.Push(prefix[k], k == 0 ? 0 : r.weight(prefix[k - 1], prefix[k]));
  }
  const bool check_self = prefix.size() == 1 || !IsMetric(r, wbar);
  return Domain(p, r, wbar, check_self);
}

SearchResult FindDeterministicStrategy(const ReducedGraph& r,
                                       const SearchConfig& config,
                                       const NodeObserver& observer) {
  const auto start = Clock::now();
  SearchResult result;
  auto finish = [&](Verdict v) {
    result.verdict = v;
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return result;
  };
  const int m = r.m();
  if (m == 0) return finish(Verdict::kInfeasible);
  const ShortestPathTable wbar = ReducedShortestPaths(r);
  const bool metric = IsMetric(r, wbar);
  const int max_d = r.max_deadline();

  if (config.ifc) {
    for (int root = 0; root < m; ++root) {
      Prefix p(m);
      p.Push(root, 0);
      if (Domain(p, r, wbar, true).empty()) return finish(Verdict::kInfeasible);
    }
  }

  Orderer order(r, config);
  std::vector<int> roots(m);
  std::iota(roots.begin(), roots.end(), 0);
  order.Sort(roots, std::vector<int>(m, 0));
  const int root = config.root >= 0 && config.root < m ? config.root : roots.front();

  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(config.time_budget_s));
  Prefix p(m);
  p.Push(root, 0);
  std::vector<Frame> stack;

  // Visits the node for the current prefix. Returns true on a solution and
  // otherwise leaves a frame (possibly empty) on the stack.
  auto enter = [&]() -> bool {
    ++result.nodes_expanded;
    const bool terminal = p.seq.size() >= 2 && p.seq.back() == p.seq.front() && p.distinct == m;
    if (observer) observer(p.seq, terminal);
    if (terminal) {
      if (CheckCycle(p.seq, r)) return true;
      stack.push_back({});
      return false;
    }
    if (config.lsc) {
      const int back = wbar.at(p.seq.back(), p.seq.front());
      if (back >= kUnreachable || p.time.back() + static_cast<long long>(back) > max_d) {
        stack.push_back({});
        return false;
      }
    }
    Frame f;
    f.domain = Domain(p, r, wbar, p.seq.size() == 1 || !metric);
    order.Sort(f.domain, p.count);
    stack.push_back(std::move(f));
    return false;
  };

  bool found = enter();
  while (!found && !stack.empty()) {
    if ((result.nodes_expanded & 255) == 0 && Clock::now() > deadline) {
      return finish(Verdict::kTimeout);
    }
    Frame& top = stack.back();
    if (top.next == top.domain.size()) {
      stack.pop_back();
      if (p.seq.size() > 1) p.Pop();
      continue;
    }
    const int v = top.domain[top.next++];
    p.Push(v, r.weight(p.seq.back(), v));
    found = enter();
  }
  if (!found) return finish(Verdict::kInfeasible);
  PatrolCycle c;
  c.seq = p.seq;
  c.temporal_length = TemporalLength(c.seq, r);
  result.cycle = std::move(c);
  return finish(Verdict::kFeasible);
}

SearchResult LinearFeasibility(const ReducedGraph& r) {
  const int m = r.m();
  SearchResult result;
  if (m == 1) {
    std::vector<int> seq{0, 0};
    if (r.arc(0, 0) && CheckCycle(seq, r)) {
      result.verdict = Verdict::kFeasible;
      result.cycle = PatrolCycle{seq, TemporalLength(seq, r)};
    }
    return result;
  }
  std::vector<std::vector<int>> nbr(m);
  int edges = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j || !r.arc(i, j)) continue;
      if (!r.arc(j, i)) throw InputError("linear feasibility: G' arcs are not symmetric");
      nbr[i].push_back(j);
      if (i < j) ++edges;
    }
  }
  std::vector<int> ends;
  for (int i = 0; i < m; ++i) {
    if (nbr[i].size() > 2 || nbr[i].empty()) throw InputError("linear feasibility: G' is not a path");
    if (nbr[i].size() == 1) ends.push_back(i);
  }
  if (edges != m - 1 || ends.size() != 2) throw InputError("linear feasibility: G' is not a path");
  int start = r.ids[ends[0]] < r.ids[ends[1]] ? ends[0] : ends[1];
  std::vector<int> forward{start};
  int prev = -1, cur = start;
  while (static_cast<int>(forward.size()) < m) {
    int next = nbr[cur][0] == prev ? nbr[cur].back() : nbr[cur][0];
    prev = cur;
    cur = next;
    forward.push_back(cur);
  }
  if (cur == start) throw InputError("linear feasibility: G' is not a path");
  std::vector<int> seq = forward;
  for (int k = m - 2; k >= 0; --k) seq.push_back(forward[k]);
  if (CheckCycle(seq, r)) {
    result.verdict = Verdict::kFeasible;
    result.cycle = PatrolCycle{seq, TemporalLength(seq, r)};
  }
  return result;
}

}  // namespace patrol

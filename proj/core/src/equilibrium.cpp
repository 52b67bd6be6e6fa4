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

#include "patrol/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "patrol/parallel.hpp"
#include "patrol/reduction.hpp"

namespace patrol {

namespace {

constexpr double kCoverage = 1e-9;
constexpr double kAgreement = 1e-3;

// Lowest v_p among `candidates`, ties by id.
int LowestValueTarget(const PatrolInstance& g, const std::vector<int>& candidates) {
  return *std::min_element(candidates.begin(), candidates.end(), [&](int a, int b) {
    if (g.patroller_value(a) != g.patroller_value(b)) {
      return g.patroller_value(a) < g.patroller_value(b);
    }
    return g.ids[a] < g.ids[b];
  });
}

std::vector<ActionSlack> SlacksFor(const AlphaProblem& p, const MarkovStrategy& s, double u) {
  const auto g = ConstraintValues(p, s, u);
  std::vector<ActionSlack> out;
  out.reserve(g.size());
  for (size_t k = 0; k < g.size(); ++k) out.push_back({p.constraints[k].action, -g[k]});
  return out;
}

EquilibriumResult Deterministic(const PatrolInstance& g, const ReducedGraph& rg,
                                const SearchResult& sr) {
  EquilibriumResult res;
  res.kind = StrategyKind::kDeterministic;
  res.stage = Stage::kDeterministic;
  res.det_verdict = VerdictName(sr.verdict);
  res.cycle = LiftCycle(sr.cycle->seq, rg);
  res.intruder_response = IntruderAction::StayOut();
  res.patroller_eu = g.total_patroller_value();
  res.intruder_eu = 0.0;
  res.covers_all_targets = true;
  res.subproblems = 0;
  return res;
}

}  // namespace

std::string StageName(Stage s) {
  switch (s) {
    case Stage::kNone: return "none";
    case Stage::kDeterministic: return "deterministic";
    case Stage::kStayOut: return "stay-out";
    case Stage::kLeaderFollower: return "leader-follower";
    case Stage::kStrictlyCompetitive: return "strictly-competitive";
  }
  return "none";
}

bool IsStrictlyCompetitive(const PatrolInstance& g) {
  const auto t = g.targets();
  for (int a : t) {
    for (int b : t) {
      const bool p = g.patroller_value(a) >= g.patroller_value(b);
      const bool i = g.intruder_value(a) >= g.intruder_value(b);
      if (p != i) return false;
    }
  }
  return true;
}

void AttachMixedDiagnostics(EquilibriumResult& res, const ReducedInstance& r,
                            const MarkovStrategy& s) {
  const PatrolInstance& g = r.base;
  res.kind = StrategyKind::kMixed;
  res.reduced = r;
  res.strategy = s;
  res.action_table = EvaluateActions(s, r);
  res.intruder_response = SelectBestResponse(res.action_table, g);
  for (const auto& av : res.action_table) {
    if (av.action == res.intruder_response) {
      res.patroller_eu = av.eu.patroller;
      res.intruder_eu = av.eu.intruder;
    }
  }
  res.uncovered.clear();
  for (int t : g.targets()) {
    bool covered = true;
    for (const auto& av : res.action_table) {
      if (!av.action.stay_out && av.action.t == t && av.capture <= kCoverage) covered = false;
    }
    if (!covered) res.uncovered.push_back(g.ids[t]);
  }
  res.covers_all_targets = res.uncovered.empty();
}

std::optional<MarkovStrategy> SolveStayoutFeasibility(const ReducedInstance& r,
                                                      const SolverConfig& nlp) {
  auto sol = SolveFeasibility(StayOutProblem(r), nlp);
  if (!sol.found) return std::nullopt;
  return sol.strategy;
}

EquilibriumResult SolveLeaderFollower(const ReducedInstance& r, const SolverConfig& nlp,
                                      int jobs, bool tie_rows) {
  const PatrolInstance& g = r.base;
  std::vector<IntruderAction> order;
  auto targets = g.targets();
  std::sort(targets.begin(), targets.end(), [&](int a, int b) {
    if (g.patroller_value(a) != g.patroller_value(b)) {
      return g.patroller_value(a) > g.patroller_value(b);
    }
    return g.ids[a] < g.ids[b];
  });
  for (int s : targets) {
    auto qs = r.vt[s];
    std::sort(qs.begin(), qs.end(), [&](int a, int b) { return g.ids[a] < g.ids[b]; });
    for (int q : qs) order.push_back(IntruderAction::EnterWhen(s, q));
  }

  const int count = static_cast<int>(order.size());
  std::vector<SolverResult> sols(count);
  SolverConfig inner = nlp;
  if (jobs > 1) inner.jobs = 1;
  ParallelFor(count, jobs, [&](int k) {
    AlphaProblem p = LeaderFollowerProblem(r, order[k]);
    p.tie_rows = tie_rows;
    SolverConfig c = inner;
    c.rng_seed = DeriveSeed(nlp.rng_seed, static_cast<std::uint64_t>(k));
    sols[k] = Maximize(p, c);
  });

  EquilibriumResult best;
  best.stage = Stage::kLeaderFollower;
  best.subproblems = count;
  int feasible = 0;
  bool best_consistent = false;
  int best_k = -1;
  for (int k = 0; k < count; ++k) {
    if (!sols[k].found) continue;
    ++feasible;
    EquilibriumResult cand;
    AttachMixedDiagnostics(cand, r, sols[k].strategy);
    // Prefer subproblems whose own (s, q) survives as the recomputed best
    // response; the others are kept only as a fallback.
    const bool consistent = cand.intruder_response == order[k];
    bool take = best_k < 0;
    if (!take && consistent != best_consistent) take = consistent;
    if (!take && consistent == best_consistent) take = cand.patroller_eu > best.patroller_eu + 1e-12;
    if (!take) continue;
    cand.stage = Stage::kLeaderFollower;
    cand.slacks = SlacksFor(LeaderFollowerProblem(r, order[k]), sols[k].strategy, 0.0);
    best = std::move(cand);
    best_k = k;
    best_consistent = consistent;
  }
  best.subproblems = count;
  best.subproblems_feasible = feasible;
  if (best_k >= 0 && !best_consistent) {
    best.warnings.push_back("no subproblem solution kept its own action as best response");
  }
  if (best_k < 0) best.warnings.push_back("no leader-follower subproblem found feasible");
  return best;
}

EquilibriumResult SolveStrictlyCompetitive(const ReducedInstance& r, const SolverConfig& nlp) {
  if (!IsStrictlyCompetitive(r.base)) {
    throw std::invalid_argument("instance is not strictly competitive");
  }
  const AlphaProblem p = MinmaxProblem(r);
  const auto sol = Maximize(p, nlp);
  EquilibriumResult res;
  res.stage = Stage::kStrictlyCompetitive;
  res.subproblems = 1;
  if (!sol.found) {
    res.warnings.push_back("minmax program found no feasible point");
    return res;
  }
  res.subproblems_feasible = 1;
  AttachMixedDiagnostics(res, r, sol.strategy);
  res.minmax_u = sol.u;
  res.slacks = SlacksFor(p, sol.strategy, sol.u);
  return res;
}

EquilibriumResult Solve(const PatrolInstance& g, const PipelineConfig& config) {
  const auto table = AllPairsShortestPaths(g);
  const ReducedGraph rg = Reduce(g, table);
  const SearchResult sr = FindDeterministicStrategy(rg, config.det);
  if (sr.verdict == Verdict::kFeasible) return Deterministic(g, rg, sr);

  auto reduced = RemoveDominatedPatrollerActions(g, table);
  if (!reduced) {
    throw DisconnectedError("disconnected: reduced graph is not strongly connected");
  }
  FillNondominated(*reduced, config.node_cap, config.jobs);

  SolverConfig nlp = config.nlp;
  EquilibriumResult res;
  if (auto s = SolveStayoutFeasibility(*reduced, nlp)) {
    res.stage = Stage::kStayOut;
    res.subproblems = 1;
    res.subproblems_feasible = 1;
    AttachMixedDiagnostics(res, *reduced, *s);
    res.slacks = SlacksFor(StayOutProblem(*reduced), *s, 0.0);
  } else {
    const bool sc = IsStrictlyCompetitive(reduced->base);
    if (config.shortcut == ShortcutMode::kOn && !sc) {
      throw std::invalid_argument("instance is not strictly competitive");
    }
    const bool use_sc = config.shortcut == ShortcutMode::kOn ||
                        (config.shortcut == ShortcutMode::kAuto && sc);
    if (use_sc) {
      res = SolveStrictlyCompetitive(*reduced, nlp);
      if (config.diagnostics) {
        const auto lf = SolveLeaderFollower(*reduced, nlp, config.jobs);
        if (lf.kind == StrategyKind::kMixed &&
            std::abs(lf.patroller_eu - res.patroller_eu) > kAgreement) {
          res.warnings.push_back("shortcut and enumeration disagree on patroller EU");
        }
      }
    } else {
      res = SolveLeaderFollower(*reduced, nlp, config.jobs);
    }
  }
  res.det_verdict = VerdictName(sr.verdict);
  if (sr.verdict == Verdict::kTimeout) {
    res.warnings.push_back("deterministic search timed out");
  }
  return res;
}

EquilibriumResult SolveWithTargetDropping(const PatrolInstance& g,
                                          const PipelineConfig& config) {
  PatrolInstance cur = g;
  std::vector<std::string> dropped;
  auto drop = [&](const std::vector<int>& candidates) {
    if (cur.targets().size() <= 1) {
      throw InputError("every target would be dropped");
    }
    const int t = LowestValueTarget(cur, candidates);
    dropped.push_back(cur.ids[t]);
    cur = WithoutTarget(cur, t);
  };
  for (;;) {
    if (config.drop == DropMode::kDeterministic) {
      const auto table = AllPairsShortestPaths(cur);
      const ReducedGraph rg = Reduce(cur, table);
      const SearchResult sr = FindDeterministicStrategy(rg, config.det);
      if (sr.verdict == Verdict::kFeasible) {
        auto res = Deterministic(cur, rg, sr);
        res.dropped = dropped;
        return res;
      }
      drop(cur.targets());
      continue;
    }
    auto res = Solve(cur, config);
    if (config.drop == DropMode::kMixed && res.kind == StrategyKind::kMixed &&
        !res.covers_all_targets) {
      std::vector<int> uncovered;
      for (const auto& id : res.uncovered) uncovered.push_back(cur.index_of(id));
      drop(uncovered);
      continue;
    }
    res.dropped = dropped;
    return res;
  }
}

}  // namespace patrol

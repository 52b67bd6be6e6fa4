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

#include "patrol/genbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include "patrol/dominance.hpp"
#include "patrol/equilibrium.hpp"
#include "patrol/parallel.hpp"

namespace patrol {

namespace {

std::string PaddedId(int k, int width) {
  std::ostringstream os;
  os << std::setw(width) << std::setfill('0') << k;
  return os.str();
}

struct Trial {
  Verdict verdict = Verdict::kInfeasible;
  bool verified = true;
  double ms = 0.0;
};

}  // namespace

std::pair<int, int> DeadlineRange(const ShortestPathTable& wbar) {
  const int n = wbar.n;
  int lo = kUnreachable, hi = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      lo = std::min(lo, wbar.at(i, j) + wbar.at(j, i));
      hi = std::max(hi, wbar.at(i, j));
    }
  }
  if (n < 2) return {1, 1};
  return {lo, 2 * n * n * hi};
}

ReducedGraph GenerateInstance(const GenSpec& spec) {
  const int n = spec.n;
  if (n < 2 || spec.m < n || spec.m > (n - 1) * n) {
    throw InputError("generate: need 2 <= n <= m <= (n-1)n");
  }
  std::mt19937_64 rng(spec.rng_seed);
  const int width = std::max(2, static_cast<int>(std::to_string(n).size()));
  std::vector<std::string> ids(n);
  for (int k = 0; k < n; ++k) ids[k] = PaddedId(k + 1, width);

  // A random Hamiltonian cycle keeps m = n admissible and strongly connected.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::uint8_t> has(static_cast<size_t>(n) * n, 0);
  std::vector<std::pair<int, int>> arcs;
  for (int k = 0; k < n; ++k) {
    const int a = perm[k], b = perm[(k + 1) % n];
    has[a * n + b] = 1;
    arcs.push_back({a, b});
  }
  std::vector<std::pair<int, int>> rest;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && !has[i * n + j]) rest.push_back({i, j});
    }
  }
  std::shuffle(rest.begin(), rest.end(), rng);
  rest.resize(spec.m - n);
  arcs.insert(arcs.end(), rest.begin(), rest.end());

  ReducedGraph r = MakeReducedGraph(ids, std::vector<int>(n, 1));
  for (auto [a, b] : arcs) SetReducedArc(r, a, b, 1);
  const auto [lo, hi] = DeadlineRange(ReducedShortestPaths(r));
  std::uniform_int_distribution<int> dd(lo, hi);
  for (int k = 0; k < n; ++k) r.d[k] = dd(rng);
  return r;
}

std::string DescribeConfig(const SearchConfig& c) {
  std::string s = HeuristicName(c.heuristic);
  if (c.rtb) s += "+rtb";
  if (c.lsc) s += "+lsc";
  if (c.ifc) s += "+ifc";
  return s;
}

SearchConfig ParseConfigSpec(const std::string& text) {
  SearchConfig c;
  c.rtb = c.lsc = c.ifc = false;
  std::stringstream ss(text);
  std::string tok;
  bool first = true;
  while (std::getline(ss, tok, '+')) {
    if (first) {
      c.heuristic = ParseHeuristic(tok);
      first = false;
    } else if (tok == "rtb") {
      c.rtb = true;
    } else if (tok == "lsc") {
      c.lsc = true;
    } else if (tok == "ifc") {
      c.ifc = true;
    } else {
      throw InputError("unknown search option '" + tok + "' in '" + text + "'");
    }
  }
  if (first) throw InputError("empty search configuration");
  return c;
}

BenchReport RunDetBenchmark(const DetBenchSpec& spec) {
  if (spec.trials < 1) throw InputError("bench-det: trials must be >= 1");
  BenchReport report;
  std::ostringstream h;
  h << "deterministic search: " << spec.trials << " trials per cell, budget "
    << spec.budget_s << " s, seed " << spec.seed;
  report.header = h.str();
  for (int n : spec.sizes) {
    const std::uint64_t size_seed = DeriveSeed(spec.seed, static_cast<std::uint64_t>(n));
    for (const auto& base : spec.configs) {
      std::vector<Trial> trials(spec.trials);
      ParallelFor(spec.trials, spec.jobs, [&](int k) {
        const std::uint64_t seed = DeriveSeed(size_seed, static_cast<std::uint64_t>(k));
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> mm(n, (n - 1) * n);
        GenSpec gs{n, mm(rng), seed};
        const ReducedGraph r = GenerateInstance(gs);
        SearchConfig c = base;
        c.time_budget_s = spec.budget_s;
        c.rng_seed = seed;
        const auto res = FindDeterministicStrategy(r, c);
        Trial& t = trials[k];
        t.verdict = res.verdict;
        t.ms = res.elapsed_ms;
        if (res.verdict == Verdict::kFeasible) {
          t.verified = res.cycle && CheckCycle(res.cycle->seq, r);
        }
      });
      DetCell cell;
      cell.config = DescribeConfig(base);
      cell.n = n;
      cell.trials = spec.trials;
      std::vector<double> times;
      for (const auto& t : trials) {
        switch (t.verdict) {
          case Verdict::kFeasible:
            if (t.verified) {
              ++cell.feasible;
            } else {
              ++cell.verify_failures;
            }
            break;
          case Verdict::kInfeasible: ++cell.infeasible; break;
          case Verdict::kTimeout: ++cell.timeout; break;
        }
        if (t.verdict != Verdict::kTimeout && t.verified) times.push_back(t.ms);
      }
      cell.termination_pct = 100.0 * (cell.feasible + cell.infeasible) / spec.trials;
      if (!times.empty()) {
        const double mean = std::accumulate(times.begin(), times.end(), 0.0) / times.size();
        double var = 0.0;
        for (double x : times) var += (x - mean) * (x - mean);
        cell.mean_ms = mean;
        cell.std_ms = std::sqrt(var / times.size());
        cell.max_ms = *std::max_element(times.begin(), times.end());
        cell.min_ms = *std::min_element(times.begin(), times.end());
      }
      report.det.push_back(cell);
    }
  }
  return report;
}

BenchReport RunMixedBenchmark(
    const std::vector<std::pair<std::string, PatrolInstance>>& instances,
    const MixedBenchSpec& spec) {
  BenchReport report;
  report.header = "subproblem counts: complete |T||V|, patroller-reduced |T||V_r|, fully reduced sum |V_t|";
  for (const auto& [name, g] : instances) {
    MixedRow row;
    row.name = name;
    row.vertices = g.n();
    row.targets = static_cast<int>(g.targets().size());
    row.complete = row.targets * row.vertices;
    auto red = RemoveDominatedPatrollerActions(g, AllPairsShortestPaths(g));
    if (!red) {
      row.stage = "disconnected";
      report.mixed.push_back(row);
      continue;
    }
    FillNondominated(*red, kDefaultNodeCap, spec.jobs);
    row.reduced_p = row.targets * red->base.n();
    int sum = 0;
    for (int t : red->base.targets()) sum += static_cast<int>(red->vt[t].size());
    row.reduced_pi = sum;
    row.count_ok = sum == red->SubproblemCount();
    if (spec.solve) {
      PipelineConfig pc;
      pc.nlp.rng_seed = spec.seed;
      pc.det.rng_seed = spec.seed;
      pc.jobs = spec.jobs;
      const auto t0 = std::chrono::steady_clock::now();
      const auto res = Solve(g, pc);
      row.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      row.stage = StageName(res.stage);
      row.patroller_eu = res.patroller_eu;
    }
    report.mixed.push_back(row);
  }
  return report;
}

std::string RenderTable(const BenchReport& report) {
  std::ostringstream os;
  os << "# " << report.header << "\n";
  if (!report.det.empty()) {
    os << std::left << std::setw(28) << "config" << std::right << std::setw(4) << "n"
       << std::setw(8) << "%" << std::setw(11) << "time" << std::setw(11) << "dev"
       << std::setw(11) << "max" << std::setw(11) << "min" << std::setw(6) << "feas"
       << std::setw(6) << "inf" << std::setw(6) << "t/o" << "\n";
    os << std::fixed;
    for (const auto& c : report.det) {
      os << std::left << std::setw(28) << c.config << std::right << std::setw(4) << c.n
         << std::setw(8) << std::setprecision(1) << c.termination_pct << std::setprecision(2)
         << std::setw(11) << c.mean_ms << std::setw(11) << c.std_ms << std::setw(11)
         << c.max_ms << std::setw(11) << c.min_ms << std::setw(6) << c.feasible
         << std::setw(6) << c.infeasible << std::setw(6) << c.timeout << "\n";
    }
  }
  if (!report.mixed.empty()) {
    os << std::left << std::setw(20) << "instance" << std::right << std::setw(6) << "|V|"
       << std::setw(6) << "|T|" << std::setw(10) << "complete" << std::setw(10) << "red. p"
       << std::setw(10) << "red. p+i" << std::setw(6) << "ok" << "  stage\n";
    for (const auto& r : report.mixed) {
      os << std::left << std::setw(20) << r.name << std::right << std::setw(6) << r.vertices
         << std::setw(6) << r.targets << std::setw(10) << r.complete << std::setw(10)
         << r.reduced_p << std::setw(10) << r.reduced_pi << std::setw(6)
         << (r.count_ok ? "yes" : "NO") << "  " << r.stage << "\n";
    }
  }
  return os.str();
}

}  // namespace patrol

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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "patrol/bilinear.hpp"

using namespace patrol;

namespace {

SolverConfig Quick(std::uint64_t seed = 1, int starts = 8) {
  SolverConfig c;
  c.starts = starts;
  c.rng_seed = seed;
  return c;
}

ReducedInstance All(const PatrolInstance& g) {
  auto r = Unreduced(g);
  for (int t : g.targets()) {
    r.vt[t].resize(g.n());
    std::iota(r.vt[t].begin(), r.vt[t].end(), 0);
  }
  return r;
}

// Two-state chain on a 2-clique: x = stay probability at c1, y at c2.
MarkovStrategy TwoState(double x, double y) { return MarkovStrategy{2, {x, 1 - x, 1 - y, y}}; }

bool Deters(const MarkovStrategy& s, const PatrolInstance& g) {
  for (int t : g.targets()) {
    for (int z = 0; z < g.n(); ++z) {
      if (ActionUtilities(s, IntruderAction::EnterWhen(t, z), g).intruder > 1e-12) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("bilinear") {

TEST_CASE("simplex projection") {
  std::vector<double> v{0.2, 0.3, 0.5};
  ProjectSimplex(v);
  CHECK(v[0] == doctest::Approx(0.2));
  v = {2.0, 0.0};
  ProjectSimplex(v);
  CHECK(v == std::vector<double>{1.0, 0.0});
  v = {-1.0, -1.0, -1.0};
  ProjectSimplex(v);
  for (double x : v) CHECK(x == doctest::Approx(1.0 / 3));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd(0, 2);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> w(1 + k % 7);
    for (double& x : w) x = nd(rng);
    ProjectSimplex(w);
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*std::min_element(w.begin(), w.end()) >= 0.0);
  }
}

TEST_CASE("single target is deterred by staying") {
  const auto g = oracle::Clique(1, 1, 1, 1, 0.5);
  const auto res = SolveFeasibility(StayOutProblem(All(g)), Quick());
  REQUIRE(res.found);
  CHECK(res.strategy.at(0, 0) == 1.0);
  const auto mm = Maximize(MinmaxProblem(All(g)), Quick());
  REQUIRE(mm.found);
  CHECK(mm.u == doctest::Approx(-0.5).epsilon(1e-8));
}

TEST_CASE("2-clique deterrable: solver and grid oracle agree") {
  const auto g = oracle::Clique(2, 2, 1, 1, 1.0);
  bool symmetric_ok = false, any = false;
  for (int a = 0; a <= 100; ++a) {
    for (int b = 0; b <= 100; ++b) {
      if (Deters(TwoState(a / 100.0, b / 100.0), g)) {
        any = true;
        symmetric_ok |= a == 50 && b == 50;
      }
    }
  }
  CHECK(any);
  CHECK(symmetric_ok);
  const auto res = SolveFeasibility(StayOutProblem(All(g)), Quick());
  REQUIRE(res.found);
  CHECK(res.max_violation <= 1e-6);
  CHECK(ValidateStrategy(res.strategy, g, 1e-12).empty());
  for (double v : ConstraintValues(StayOutProblem(All(g)), res.strategy)) CHECK(v <= 1e-6);
}

TEST_CASE("far-apart targets with tiny deadlines cannot be deterred") {
  auto g = MakeInstance({"a", "x", "b"}, {});
  AddUndirected(g, 0, 1);
  AddUndirected(g, 1, 2);
  MarkTarget(g, 0, 1, 1, 1);
  MarkTarget(g, 2, 1, 1, 1);
  // Grid oracle over the three free parameters of the middle row and the ends.
  bool deterred = false;
  for (int a = 0; a <= 20 && !deterred; ++a) {
    for (int b = 0; b <= 20 - a && !deterred; ++b) {
      for (int c = 0; c <= 20 && !deterred; ++c) {
        MarkovStrategy s{3, {c / 20.0, 1 - c / 20.0, 0, a / 20.0, 1 - (a + b) / 20.0, b / 20.0, 0,
                             1 - c / 20.0, c / 20.0}};
        deterred = Deters(s, g);
      }
    }
  }
  CHECK_FALSE(deterred);
  CHECK_FALSE(SolveFeasibility(StayOutProblem(All(g)), Quick()).found);
}

TEST_CASE("argument checks") {
  const auto g = oracle::Clique(2, 2, 1, 1);
  CHECK_THROWS_AS(SolveFeasibility(MinmaxProblem(All(g)), Quick()), std::invalid_argument);
  CHECK_THROWS_AS(Maximize(StayOutProblem(All(g)), Quick()), std::invalid_argument);
  std::mt19937_64 rng(3);
  auto p = StayOutProblem(All(oracle::RandomInstance(rng, 4, 2, 3, 0.0)));
  p.tie_rows = true;
  CHECK_THROWS_AS(SolveFeasibility(p, Quick()), std::invalid_argument);
}

TEST_CASE("unconstrained capture maximization on a 2-cycle") {
  auto g = MakeInstance({"a", "b"}, {});
  AddUndirected(g, 0, 1);
  MarkTarget(g, 1, 1, 1, 1);
  AlphaProblem p;
  p.instance = All(g);
  p.objective = ObjectiveKind::kMaximizePatroller;
  p.focus = IntruderAction::EnterWhen(1, 0);
  const auto res = Maximize(p, Quick());
  REQUIRE(res.found);
  CHECK(res.objective == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(res.strategy.at(0, 1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("relabeling a 3-clique leaves the value unchanged") {
  const std::vector<double> vals{3, 2, 1};
  std::vector<int> perm{0, 1, 2};
  double first = 0;
  bool have = false;
  do {
    auto g = oracle::Clique(3, 2, 1, 1);
    for (int k = 0; k < 3; ++k) MarkTarget(g, k, 2, vals[perm[k]], vals[perm[k]]);
    const auto res = Maximize(MinmaxProblem(All(g)), Quick(4, 16));
    REQUIRE(res.found);
    if (!have) {
      first = res.u;
      have = true;
    }
    CHECK(std::abs(res.u - first) <= 1e-4);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("reported objective matches the markov evaluation") {
  std::mt19937_64 rng(14);
  for (int k = 0; k < 6; ++k) {
    const auto g = oracle::RandomInstance(rng, 3 + k % 2, 2, 3, 0.5);
    const auto r = All(g);
    const auto t = g.targets()[0];
    const auto focus = IntruderAction::EnterWhen(t, (t + 1) % g.n());
    const auto res = Maximize(LeaderFollowerProblem(r, focus), Quick(k, 4));
    if (!res.found) continue;
    CHECK(std::abs(res.objective - ActionUtilities(res.strategy, focus, g).patroller) <= 1e-8);
    CHECK(res.max_violation <= 1e-6);
    CHECK(ValidateStrategy(res.strategy, g, 1e-12).empty());
  }
}

TEST_CASE("more starts never give a worse value, same seed is reproducible") {
  std::mt19937_64 rng(2);
  const auto g = oracle::RandomInstance(rng, 4, 3, 3, 0.4);
  const auto p = MinmaxProblem(All(g));
  const auto a = Maximize(p, Quick(5, 4));
  const auto b = Maximize(p, Quick(5, 8));
  const auto c = Maximize(p, Quick(5, 8));
  REQUIRE(a.found);
  REQUIRE(b.found);
  CHECK(b.u <= a.u + 1e-12);
  CHECK(b.strategy.alpha == c.strategy.alpha);
  auto par = Quick(5, 8);
  par.jobs = 3;
  CHECK(Maximize(p, par).strategy.alpha == b.strategy.alpha);
}

TEST_CASE("gradient check") {
  std::mt19937_64 rng(6);
  const auto g = oracle::Clique(3, 3, 1, 1);
  const auto r = All(g);
  for (int k = 0; k < 10; ++k) {
    const auto s = oracle::RandomStrategy(g, rng, 0.01);
    auto rep = GradientCheck(LeaderFollowerProblem(r, IntruderAction::EnterWhen(0, 1)), s);
    CHECK(rep.max_rel_error <= 1e-5);
    CHECK(rep.checked > 0);
    rep = GradientCheck(MinmaxProblem(r), s, 0.3);
    CHECK(rep.max_rel_error <= 1e-5);
  }
  const auto g1 = oracle::Clique(3, 1, 1, 1);
  const auto s = oracle::RandomStrategy(g1, rng, 0.01);
  CHECK(GradientCheck(StayOutProblem(All(g1)), s).max_rel_error <= 1e-9);
  // Boundary point: entries pinned at 0 or 1 are skipped, not compared.
  MarkovStrategy corner{3, {1, 0, 0, 0, 1, 0, 0, 0, 1}};
  const auto rep = GradientCheck(StayOutProblem(r), corner);
  CHECK(rep.skipped == 81);  // 9 constraints x 9 entries
  CHECK(rep.checked == 0);
}

}  // TEST_SUITE

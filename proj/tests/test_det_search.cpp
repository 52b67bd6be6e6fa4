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

#include <map>
#include <set>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "patrol/det_search.hpp"
#include "patrol/io.hpp"

using namespace patrol;

namespace {

ReducedGraph Ring(int n, int d) {
  std::vector<std::string> ids;
  for (int i = 1; i <= n; ++i) ids.push_back(std::to_string(i));
  auto r = MakeReducedGraph(ids, std::vector<int>(n, d));
  for (int i = 0; i < n; ++i) SetReducedArc(r, i, (i + 1) % n, 1);
  return r;
}

ReducedGraph Line2(int w, int d) {
  auto r = MakeReducedGraph({"1", "2"}, {d, d});
  SetReducedArc(r, 0, 1, w);
  SetReducedArc(r, 1, 0, w);
  return r;
}

ReducedGraph Single(int d) { return MakeReducedGraph({"t"}, {d}); }

ReducedGraph Fixture(const std::string& name) {
  return LoadReducedGraph(std::string(PATROL_FIXTURES_DIR) + "/" + name);
}

std::vector<int> Ids(const ReducedGraph& r, std::initializer_list<const char*> names) {
  std::vector<int> out;
  for (const char* n : names) out.push_back(r.index_of(n));
  return out;
}

SearchConfig Config(Heuristic h, bool rtb, bool lsc, bool ifc, std::uint64_t seed = 1) {
  SearchConfig c;
  c.heuristic = h;
  c.rtb = rtb;
  c.lsc = lsc;
  c.ifc = ifc;
  c.rng_seed = seed;
  c.time_budget_s = 10;
  return c;
}

}  // namespace

TEST_SUITE("det_search") {

TEST_CASE("check_cycle basics") {
  CHECK(CheckCycle({0, 0}, Single(1)));
  const auto ring3 = Ring(3, 3);
  CHECK(CheckCycle({0, 1, 2, 0}, ring3));
  CHECK_FALSE(CheckCycle({0, 1, 2, 0}, Ring(3, 2)));
  CHECK_FALSE(CheckCycle({0, 2, 1, 0}, ring3));  // not arcs
  CHECK_FALSE(CheckCycle({0, 1, 2}, ring3));     // not closed
  CHECK(CheckCycle({0, 1, 0}, Line2(1, 2)));
  const auto fig3a = Fixture("fig3a.json");
  CHECK_FALSE(CheckCycle(Ids(fig3a, {"06", "08", "06"}), fig3a));
}

TEST_CASE("check_cycle agrees with the independent checker") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int k = 0; k < 300; ++k) {
    auto r = Ring(4, 1 + k % 8);
    SetReducedArc(r, 0, 2, 1 + k % 3);
    SetReducedArc(r, 2, 0, 2);
    std::vector<int> seq{pick(rng)};
    const int len = 1 + k % 9;
    for (int s = 0; s < len; ++s) seq.push_back(pick(rng));
    CHECK(CheckCycle(seq, r) == oracle::CycleOk(seq, r));
  }
}

TEST_CASE("single target") {
  for (int d : {1, 2, 7}) {
    const auto res = FindDeterministicStrategy(Single(d), SearchConfig{});
    REQUIRE(res.verdict == Verdict::kFeasible);
    CHECK(res.cycle->seq == std::vector<int>{0, 0});
  }
  const auto r = Single(3);
  const auto wbar = ReducedShortestPaths(r);
  CHECK(ForwardCheck({0}, r, wbar) == std::vector<int>{0});
}

TEST_CASE("directed 3-ring") {
  for (auto h : {Heuristic::kLex, Heuristic::kMinVisits, Heuristic::kRandom}) {
    auto res = FindDeterministicStrategy(Ring(3, 3), Config(h, true, true, true));
    REQUIRE(res.verdict == Verdict::kFeasible);
    CHECK(res.cycle->temporal_length == 3);
    CHECK(CheckCycle(res.cycle->seq, Ring(3, 3)));
    CHECK(FindDeterministicStrategy(Ring(3, 2), Config(h, false, true, true)).verdict ==
          Verdict::kInfeasible);
  }
  auto c = Config(Heuristic::kLex, false, true, true);
  c.root = 0;
  CHECK(FindDeterministicStrategy(Ring(3, 3), c).cycle->seq == std::vector<int>{0, 1, 2, 0});
  const auto r = Ring(3, 3);
  CHECK(ForwardCheck({0, 1}, r, ReducedShortestPaths(r)) == std::vector<int>{2});
}

TEST_CASE("fig 3(a) is infeasible with every pruning combination") {
  const auto r = Fixture("fig3a.json");
  for (int mask = 0; mask < 8; ++mask) {
    const auto res = FindDeterministicStrategy(
        r, Config(Heuristic::kMinVisits, mask & 1, mask & 2, mask & 4));
    CHECK(res.verdict == Verdict::kInfeasible);
  }
}

TEST_CASE("fig 3(b) trace from root 14") {
  const auto r = Fixture("fig3b.json");
  const auto wbar = ReducedShortestPaths(r);
  CHECK(wbar.at(r.index_of("14"), r.index_of("08")) + wbar.at(r.index_of("08"), r.index_of("14")) == 4);
  CHECK(ForwardCheck(Ids(r, {"14"}), r, wbar) == Ids(r, {"08"}));
  CHECK(ForwardCheck(Ids(r, {"14", "08"}), r, wbar) == Ids(r, {"06"}));
  auto c = Config(Heuristic::kMinVisits, true, true, true);
  c.root = r.index_of("14");
  const auto res = FindDeterministicStrategy(r, c);
  REQUIRE(res.verdict == Verdict::kFeasible);
  const auto& seq = res.cycle->seq;
  REQUIRE(seq.size() >= 4);
  CHECK(std::vector<int>(seq.begin(), seq.begin() + 3) == Ids(r, {"14", "08", "06"}));
  CHECK(CheckCycle(seq, r));
  CHECK(oracle::CycleOk(seq, r));
}

TEST_CASE("linear feasibility") {
  auto res = LinearFeasibility(Line2(1, 2));
  REQUIRE(res.verdict == Verdict::kFeasible);
  CHECK(res.cycle->seq == std::vector<int>{0, 1, 0});
  CHECK(LinearFeasibility(Line2(2, 3)).verdict == Verdict::kInfeasible);
  CHECK(LinearFeasibility(Single(1)).cycle->seq == std::vector<int>{0, 0});
  CHECK_THROWS_AS(LinearFeasibility(Ring(3, 3)), InputError);

  // Longer lines: agree with the general search.
  std::mt19937_64 rng(2);
  for (int k = 0; k < 40; ++k) {
    const int m = 2 + k % 5;
    std::vector<std::string> ids;
    std::vector<int> d;
    for (int i = 0; i < m; ++i) {
      ids.push_back("v" + std::to_string(i));
      d.push_back(1 + static_cast<int>(rng() % 14));
    }
    auto r = MakeReducedGraph(ids, d);
    for (int i = 0; i + 1 < m; ++i) {
      const int w = 1 + static_cast<int>(rng() % 3);
      SetReducedArc(r, i, i + 1, w);
      SetReducedArc(r, i + 1, i, w);
    }
    const auto lin = LinearFeasibility(r);
    const auto gen = FindDeterministicStrategy(r, Config(Heuristic::kMinVisits, true, true, true));
    REQUIRE(gen.verdict != Verdict::kTimeout);
    CHECK(lin.verdict == gen.verdict);
  }
}

TEST_CASE("soundness and completeness against enumeration") {
  std::mt19937_64 rng(17);
  int feasible = 0;
  for (int k = 0; k < 120; ++k) {
    const int m = 1 + k % 5;
    std::vector<std::string> ids;
    std::vector<int> d;
    for (int i = 0; i < m; ++i) {
      ids.push_back("t" + std::to_string(i));
      d.push_back(1 + static_cast<int>(rng() % 9));
    }
    auto r = MakeReducedGraph(ids, d);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i != j && rng() % 3 != 0) SetReducedArc(r, i, j, 1 + static_cast<int>(rng() % 3));
      }
    }
    const auto truth = oracle::CycleExact(r, 5'000'000);
    REQUIRE(truth != oracle::Tri::kUnknown);
    CHECK(oracle::CycleWithin(r, r.max_deadline(), 50'000'000) == truth);
    for (int mask = 0; mask < 8; ++mask) {
      const auto res = FindDeterministicStrategy(
          r, Config(mask & 1 ? Heuristic::kMinVisits : Heuristic::kLex, mask & 1, mask & 2, mask & 4, k));
      REQUIRE(res.verdict != Verdict::kTimeout);
      CHECK((res.verdict == Verdict::kFeasible) == (truth == oracle::Tri::kYes));
      if (res.cycle) {
        CHECK(CheckCycle(res.cycle->seq, r));
        CHECK(oracle::CycleOk(res.cycle->seq, r));
        if (mask & 2) CHECK(res.cycle->temporal_length <= r.max_deadline());
      }
    }
    feasible += truth == oracle::Tri::kYes;
  }
  CHECK(feasible > 10);
  CHECK(feasible < 110);
}

TEST_CASE("terminal nodes are never expanded") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 30; ++k) {
    const int m = 2 + k % 4;
    std::vector<std::string> ids;
    std::vector<int> d;
    for (int i = 0; i < m; ++i) {
      ids.push_back("t" + std::to_string(i));
      d.push_back(2 + static_cast<int>(rng() % 8));
    }
    auto r = MakeReducedGraph(ids, d);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i != j && rng() % 2 == 0) SetReducedArc(r, i, j, 1 + static_cast<int>(rng() % 2));
      }
    }
    std::set<std::vector<int>> terminal;
    std::vector<std::vector<int>> seen;
    FindDeterministicStrategy(r, Config(Heuristic::kLex, false, false, false),
                              [&](const std::vector<int>& p, bool t) {
                                seen.push_back(p);
                                if (t) terminal.insert(p);
                              });
    for (const auto& p : seen) {
      if (p.size() < 2) continue;
      const std::vector<int> parent(p.begin(), p.end() - 1);
      CHECK(terminal.count(parent) == 0);
    }
  }
}

TEST_CASE("fixed seed gives an identical search") {
  const auto r = Fixture("fig3b.json");
  for (auto h : {Heuristic::kRandom, Heuristic::kMinVisits, Heuristic::kMaxArcs}) {
    std::vector<std::vector<int>> a, b;
    auto c = Config(h, true, true, true, 99);
    const auto ra = FindDeterministicStrategy(r, c, [&](const std::vector<int>& p, bool) { a.push_back(p); });
    const auto rb = FindDeterministicStrategy(r, c, [&](const std::vector<int>& p, bool) { b.push_back(p); });
    CHECK(a == b);
    CHECK(ra.cycle->seq == rb.cycle->seq);
    CHECK(ra.nodes_expanded == rb.nodes_expanded);
  }
}

TEST_CASE("timeout is reported as a verdict") {
  const auto r = GenerateInstance({12, 30, 5});
  auto c = Config(Heuristic::kLex, false, false, false);
  c.time_budget_s = 1e-4;
  const auto res = FindDeterministicStrategy(r, c);
  CHECK(res.verdict != Verdict::kInfeasible);
}

TEST_CASE("heuristic names round-trip") {
  for (auto h : {Heuristic::kLex, Heuristic::kRandom, Heuristic::kMaxArcs, Heuristic::kMinArcs,
                 Heuristic::kMinVisits, Heuristic::kMaxD, Heuristic::kMinD}) {
    CHECK(ParseHeuristic(HeuristicName(h)) == h);
  }
  CHECK_THROWS(ParseHeuristic("nope"));
}

}  // TEST_SUITE

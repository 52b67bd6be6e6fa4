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

#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "patrol/det_search.hpp"
#include "patrol/reduction.hpp"

using namespace patrol;

namespace {

PatrolInstance Line3() {
  auto g = MakeInstance({"t1", "x", "t2"}, {});
  AddUndirected(g, 0, 1);
  AddUndirected(g, 1, 2);
  MarkTarget(g, 0, 4, 1, 1);
  MarkTarget(g, 2, 4, 1, 1);
  return g;
}

}  // namespace

TEST_SUITE("reduction") {

TEST_CASE("distances on small graphs") {
  auto pair = MakeInstance({"1", "2"}, {});
  AddUndirected(pair, 0, 1);
  auto t = AllPairsShortestPaths(pair);
  CHECK(t.at(0, 1) == 1);
  CHECK(t.at(1, 0) == 1);

  auto ring = MakeInstance({"1", "2", "3"}, {{0, 1}, {1, 2}, {2, 0}});
  t = AllPairsShortestPaths(ring);
  CHECK(t.at(0, 2) == 2);
  CHECK(t.at(2, 0) == 1);
  CHECK(t.at(1, 1) == 0);
}

TEST_CASE("distances match BFS on random digraphs") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 11;
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    auto g = MakeInstance(ids, {});
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a != b && u(rng) < 0.25) g.set_arc(a, b);
      }
    }
    const auto t = AllPairsShortestPaths(g);
    for (int s = 0; s < n; ++s) {
      const auto ref = oracle::Bfs(g, s);
      for (int v = 0; v < n; ++v) CHECK(t.at(s, v) == ref[v]);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (t.at(s, a) < kUnreachable && t.at(a, b) < kUnreachable) {
            CHECK(t.at(s, b) <= t.at(s, a) + t.at(a, b));
          }
        }
      }
    }
  }
}

TEST_CASE("line through a non-target") {
  const auto r = Reduce(Line3());
  REQUIRE(r.m() == 2);
  CHECK(r.arc(0, 1));
  CHECK(r.weight(0, 1) == 2);
  CHECK(r.weight(1, 0) == 2);
  CHECK(r.back_paths[0 * 2 + 1] == std::vector<std::string>{"t1", "x", "t2"});
  CHECK(LiftCycle({0, 1, 0}, r) == std::vector<std::string>{"t1", "x", "t2", "x", "t1"});
}

TEST_CASE("all-target graph reduces to itself") {
  auto g = MakeInstance({"a", "b", "c"}, {});
  AddUndirected(g, 0, 1);
  AddUndirected(g, 1, 2);
  for (int v = 0; v < 3; ++v) MarkTarget(g, v, 3, 1, 1);
  const auto r = Reduce(g);
  REQUIRE(r.m() == 3);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      CHECK(r.arc(a, b) == g.arc(a, b));
      if (r.arc(a, b)) CHECK(r.weight(a, b) == 1);
    }
  }
}

TEST_CASE("arcs through other targets are dropped") {
  // a - b - c with all three targets: no direct a->c arc in G'.
  auto g = MakeInstance({"a", "b", "c"}, {});
  AddUndirected(g, 0, 1);
  AddUndirected(g, 1, 2);
  for (int v = 0; v < 3; ++v) MarkTarget(g, v, 3, 1, 1);
  CHECK_FALSE(Reduce(g).arc(0, 2));
}

TEST_CASE("single target lifts to itself") {
  auto g = MakeInstance({"t"}, {});
  MarkTarget(g, 0, 1, 1, 1);
  const auto r = Reduce(g);
  CHECK(LiftCycle({0, 0}, r) == std::vector<std::string>{"t", "t"});
}

TEST_CASE("unreachable pairs are reported, not fatal") {
  auto g = MakeInstance({"a", "b"}, {});
  MarkTarget(g, 0, 2, 1, 1);
  MarkTarget(g, 1, 2, 1, 1);
  const auto r = Reduce(g);
  CHECK(r.unreachable.size() == 2);
}

TEST_CASE("back paths are target-free shortest paths and lifts keep length") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 60; ++k) {
    const auto g = oracle::RandomInstance(rng, 3 + k % 8, 1 + k % 4, 30, 0.2);
    const auto r = Reduce(g);
    CHECK(ValidateReduced(r).empty());
    const auto table = AllPairsShortestPaths(g);
    for (int i = 0; i < r.m(); ++i) {
      for (int j = 0; j < r.m(); ++j) {
        if (i == j || !r.arc(i, j)) continue;
        const auto& path = r.back_paths[i * r.m() + j];
        REQUIRE(path.size() >= 2);
        CHECK(path.front() == r.ids[i]);
        CHECK(path.back() == r.ids[j]);
        CHECK(static_cast<int>(path.size()) - 1 == r.weight(i, j));
        CHECK(r.weight(i, j) == table.at(r.origin[i], r.origin[j]));
        for (size_t p = 1; p + 1 < path.size(); ++p) CHECK_FALSE(g.is_target[g.index_of(path[p])]);
      }
    }
    // Any feasible G' cycle lifts to a sequence valid on G with equal length.
    SearchConfig c;
    c.time_budget_s = 5;
    const auto res = FindDeterministicStrategy(r, c);
    if (res.verdict == Verdict::kFeasible) {
      const auto lifted = LiftCycle(res.cycle->seq, r);
      CHECK(static_cast<int>(lifted.size()) - 1 == res.cycle->temporal_length);
      CHECK(CheckLiftedCycle(lifted, g));
    }
  }
}

}  // TEST_SUITE

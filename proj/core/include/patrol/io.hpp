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

#ifndef PATROL_IO_HPP_
#define PATROL_IO_HPP_

#include <string>
#include <vector>

#include "json.hpp"
#include "patrol/det_search.hpp"
#include "patrol/dominance.hpp"
#include "patrol/equilibrium.hpp"
#include "patrol/genbench.hpp"
#include "patrol/markov.hpp"
#include "patrol/reduction.hpp"

namespace patrol {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

std::string ReadFile(const std::string& path);

// Instance schema plus "weights" (parallel to "arcs") and optional
// "back_paths" (also parallel). Self-loops are implied with weight 1.
Json ReducedGraphToJson(const ReducedGraph& r);
ReducedGraph ParseReducedGraphJson(const std::string& text);
// Files carrying "weights" are read as G' directly; anything else is loaded
// as an instance and reduced.
ReducedGraph LoadReducedGraph(const std::string& path);

// {"vertices": [...], "alpha": {from: {to: p}}}; zero entries omitted.
Json StrategyToJson(const MarkovStrategy& s, const PatrolInstance& g);
MarkovStrategy StrategyFromJson(const Json& j, const PatrolInstance& g);

Json SearchResultToJson(const SearchResult& res, const ReducedGraph& r);
Json ReducedInstanceToJson(const ReducedInstance& r);
Json ActionTableToJson(const std::vector<ActionValue>& table, const PatrolInstance& g);
Json EquilibriumToJson(const EquilibriumResult& res);
Json BenchReportToJson(const BenchReport& report);

}  // namespace patrol

#endif  // PATROL_IO_HPP_

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

#ifndef PATROL_EQUILIBRIUM_HPP_
#define PATROL_EQUILIBRIUM_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "patrol/bilinear.hpp"
#include "patrol/det_search.hpp"
#include "patrol/dominance.hpp"
#include "patrol/markov.hpp"

namespace patrol {

// Patroller-dominance left a graph that is not strongly connected; a single
// patroller cannot cover it.
class DisconnectedError : public std::runtime_error {
 public:
  explicit DisconnectedError(const std::string& what) : std::runtime_error(what) {}
};

enum class StrategyKind { kNone, kDeterministic, kMixed };

// Which path produced the strategy.
enum class Stage { kNone, kDeterministic, kStayOut, kLeaderFollower, kStrictlyCompetitive };
std::string StageName(Stage s);

struct ActionSlack {
  IntruderAction action;
  double slack = 0.0;  // bound - EU_i(action); negative means violated
};

struct EquilibriumResult {
  StrategyKind kind = StrategyKind::kNone;
  Stage stage = Stage::kNone;
  // Deterministic: lifted vertex ids, first == last.
  std::vector<std::string> cycle;
  // Mixed: alpha over `reduced.base`.
  std::optional<ReducedInstance> reduced;
  MarkovStrategy strategy;
  IntruderAction intruder_response;
  double patroller_eu = 0.0;
  double intruder_eu = 0.0;
  bool covers_all_targets = false;
  std::vector<std::string> uncovered;  // target ids
  std::vector<ActionSlack> slacks;
  std::vector<ActionValue> action_table;
  std::optional<double> minmax_u;
  int subproblems = 0;           // optimization problems attempted
  int subproblems_feasible = 0;
  std::string det_verdict;       // verdict of the deterministic step
  std::vector<std::string> dropped;
  std::vector<std::string> warnings;
};

enum class ShortcutMode { kAuto, kOn, kOff };
enum class DropMode { kNone, kDeterministic, kMixed };

struct PipelineConfig {
  SearchConfig det;
  SolverConfig nlp;
  ShortcutMode shortcut = ShortcutMode::kAuto;
  DropMode drop = DropMode::kNone;
  // Runs enumeration next to the shortcut and warns on disagreement.
  bool diagnostics = false;
  int jobs = 1;
  std::size_t node_cap = kDefaultNodeCap;
};

bool IsStrictlyCompetitive(const PatrolInstance& g);

// Intruder EU <= 0 for every non-dominated entry. nullopt when no start
// finds a feasible point (heuristic verdict).
std::optional<MarkovStrategy> SolveStayoutFeasibility(const ReducedInstance& r,
                                                      const SolverConfig& nlp);

// One maximization per (s, q), q in V_s. kind == kNone when none is feasible.
EquilibriumResult SolveLeaderFollower(const ReducedInstance& r, const SolverConfig& nlp,
                                      int jobs = 1, bool tie_rows = false);

// Single min-u program. Throws std::invalid_argument when the values are not
// strictly competitive.
EquilibriumResult SolveStrictlyCompetitive(const ReducedInstance& r,
                                           const SolverConfig& nlp);

// Full pipeline. Throws DisconnectedError.
EquilibriumResult Solve(const PatrolInstance& g, const PipelineConfig& config);

// Solve with targets removed per config.drop (lowest v_p first, ties by id).
// Throws InputError when every target would be dropped.
EquilibriumResult SolveWithTargetDropping(const PatrolInstance& g,
                                          const PipelineConfig& config);

// Fills action table, intruder response, EUs and coverage for a mixed
// strategy on r.
void AttachMixedDiagnostics(EquilibriumResult& res, const ReducedInstance& r,
                            const MarkovStrategy& s);

}  // namespace patrol

#endif  // PATROL_EQUILIBRIUM_HPP_

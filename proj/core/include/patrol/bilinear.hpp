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

#ifndef PATROL_BILINEAR_HPP_
#define PATROL_BILINEAR_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "patrol/dominance.hpp"
#include "patrol/markov.hpp"

namespace patrol {

enum class ObjectiveKind { kNone, kMaximizePatroller, kMinimizeU };

// Right-hand side of EU_i(action) <= bound.
enum class BoundKind { kZero, kAction, kU };

struct AlphaConstraint {
  IntruderAction action;
  BoundKind bound = BoundKind::kZero;
};

// Program over alpha (masked by adjacency) and, for kMinimizeU, a scalar u.
// gamma never appears as a variable: it is eliminated by the recursion.
struct AlphaProblem {
  ReducedInstance instance;
  ObjectiveKind objective = ObjectiveKind::kNone;
  IntruderAction focus;  // (s, q) for kMaximizePatroller and kAction bounds
  std::vector<AlphaConstraint> constraints;
  // Restrict to alpha_{i,j} = beta_j for every row i. Needs a complete
  // graph (self-loops included).
  bool tie_rows = false;
};

// EU_i(t, z) <= 0 for all t, z in V_t.
AlphaProblem StayOutProblem(const ReducedInstance& r);
// max EU_p(s, q) s.t. EU_i(t, z) <= EU_i(s, q) for all other (t, z).
AlphaProblem LeaderFollowerProblem(const ReducedInstance& r, const IntruderAction& sq);
// min u s.t. EU_i(t, z) <= u.
AlphaProblem MinmaxProblem(const ReducedInstance& r);

struct SolverConfig {
  int starts = 32;
  int max_iters = 400;    // inner projected-gradient iterations per round
  int outer_iters = 30;   // multiplier updates
  double feas_tol = 1e-6;
  double opt_tol = 1e-6;
  std::uint64_t rng_seed = 0;
  double rho0 = 10.0;
  double rho_growth = 10.0;
  double rho_max = 1e9;
  int jobs = 1;
  // One JSON line per start when set.
  std::function<void(const std::string&)> trace;
};

struct SolverResult {
  bool found = false;
  MarkovStrategy strategy;
  double u = 0.0;
  double objective = 0.0;      // patroller EU or u, in original units
  double max_violation = 0.0;  // max_k max(0, g_k), original units
  int best_start = -1;
  int starts_run = 0;
};

SolverResult SolveFeasibility(const AlphaProblem& problem, const SolverConfig& config);
SolverResult Maximize(const AlphaProblem& problem, const SolverConfig& config);

// Constraint values g_k (<= 0 when satisfied), original units.
std::vector<double> ConstraintValues(const AlphaProblem& problem,
                                     const MarkovStrategy& s, double u = 0.0);

struct GradientCheckReport {
  double max_rel_error = 0.0;
  int checked = 0;
  int skipped = 0;  // entries within the step of a simplex bound
};

// Adjoint gradients of the objective and every constraint against central
// differences with step h. Error metric |a - f| / max(1, |a|, |f|).
GradientCheckReport GradientCheck(const AlphaProblem& problem,
                                  const MarkovStrategy& point, double u = 0.0,
                                  double h = 1e-6);

// Euclidean projection of v onto {x >= 0, sum x = 1}.
void ProjectSimplex(std::vector<double>& v);

}  // namespace patrol

#endif  // PATROL_BILINEAR_HPP_

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

#ifndef PATROL_MARKOV_HPP_
#define PATROL_MARKOV_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "patrol/dominance.hpp"
#include "patrol/instance.hpp"

namespace patrol {

// alpha(i, j): probability of moving i -> j, row-stochastic over arcs.
struct MarkovStrategy {
  int n = 0;
  std::vector<double> alpha;

  double at(int i, int j) const { return alpha[i * n + j]; }
  double& at(int i, int j) { return alpha[i * n + j]; }
};

MarkovStrategy UniformStrategy(const PatrolInstance& g);
std::vector<std::string> ValidateStrategy(const MarkovStrategy& s,
                                          const PatrolInstance& g,
                                          double tol = 1e-9);

// gamma^{w,t}_{i,j} for w = 1..d(t); column t is identically zero.
struct GammaSlice {
  int t = 0;
  int d = 0;
  int n = 0;
  std::vector<double> values;

  double at(int w, int i, int j) const {
    return values[(static_cast<size_t>(w - 1) * n + i) * n + j];
  }
  // S_w(i) = sum_{j != t} gamma^{w,t}_{i,j}.
  double Survival(int w, int i) const;
};

GammaSlice ComputeGamma(const MarkovStrategy& s, int t, const PatrolInstance& g);

// 1 - S_{d(t)}(z), one forward row recursion.
double CaptureProbability(const MarkovStrategy& s, int t, int z,
                          const PatrolInstance& g);

// S_w(z) for every z at w = horizon, by the backward form of the same
// recursion.
std::vector<double> SurvivalAll(const MarkovStrategy& s, int t, int horizon);

struct IntruderAction {
  bool stay_out = true;
  int t = -1;
  int z = -1;

  static IntruderAction StayOut() { return {}; }
  static IntruderAction EnterWhen(int t, int z) { return {false, t, z}; }
  bool operator==(const IntruderAction&) const = default;
};

std::string ActionName(const IntruderAction& a, const PatrolInstance& g);
// "stay-out" or "enter-when(t,z)" with vertex ids.
IntruderAction ParseAction(const std::string& text, const PatrolInstance& g);

struct Utilities {
  double intruder = 0.0;
  double patroller = 0.0;
};

Utilities UtilitiesFromCapture(double p, int t, const PatrolInstance& g);
Utilities ActionUtilities(const MarkovStrategy& s, const IntruderAction& a,
                          const PatrolInstance& g);

inline constexpr double kIndifference = 1e-9;

struct ActionValue {
  IntruderAction action;
  double capture = 0.0;
  Utilities eu;
};

// stay-out first, then every (t, z in V_t) in target then vertex order.
std::vector<ActionValue> EvaluateActions(const MarkovStrategy& s,
                                         const ReducedInstance& r);

// Patroller-favouring tie break, then lexicographic (t, z) by id.
IntruderAction SelectBestResponse(const std::vector<ActionValue>& values,
                                  const PatrolInstance& g);
IntruderAction BestResponse(const MarkovStrategy& s, const ReducedInstance& r);

// Monte Carlo estimate of the capture probability. Throws InputError for
// stay-out.
double Simulate(const MarkovStrategy& s, const IntruderAction& a,
                const PatrolInstance& g, int trials, std::uint64_t seed);

}  // namespace patrol

#endif  // PATROL_MARKOV_HPP_

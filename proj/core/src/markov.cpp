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

#include "patrol/markov.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <regex>

namespace patrol {

MarkovStrategy UniformStrategy(const PatrolInstance& g) {
  MarkovStrategy s;
  s.n = g.n();
  s.alpha.assign(static_cast<size_t>(s.n) * s.n, 0.0);
  for (int i = 0; i < s.n; ++i) {
    int deg = 0;
    for (int j = 0; j < s.n; ++j) deg += g.arc(i, j);
    for (int j = 0; j < s.n; ++j) {
      if (g.arc(i, j)) s.at(i, j) = 1.0 / deg;
    }
  }
  return s;
}

std::vector<std::string> ValidateStrategy(const MarkovStrategy& s,
                                          const PatrolInstance& g, double tol) {
  std::vector<std::string> out;
  if (s.n != g.n() || s.alpha.size() != static_cast<size_t>(s.n) * s.n) {
    out.push_back("alpha: matrix size does not match the vertex set");
    return out;
  }
  for (int i = 0; i < s.n; ++i) {
    double row = 0.0;
    for (int j = 0; j < s.n; ++j) {
      const double a = s.at(i, j);
      if (a < -tol) out.push_back("alpha: negative entry " + g.ids[i] + " -> " + g.ids[j]);
      if (a > tol && !g.arc(i, j)) out.push_back("alpha: mass on missing arc " + g.ids[i] + " -> " + g.ids[j]);
      row += a;
    }
    if (std::abs(row - 1.0) > tol) out.push_back("alpha: row " + g.ids[i] + " does not sum to 1");
  }
  return out;
}

double GammaSlice::Survival(int w, int i) const {
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j != t) sum += at(w, i, j);
  }
  return sum;
}

GammaSlice ComputeGamma(const MarkovStrategy& s, int t, const PatrolInstance& g) {
  GammaSlice out;
  const int n = s.n;
  out.t = t;
  out.d = g.deadline(t);
  out.n = n;
  out.values.assign(static_cast<size_t>(out.d) * n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != t) out.values[static_cast<size_t>(i) * n + j] = s.at(i, j);
    }
  }
  for (int w = 2; w <= out.d; ++w) {
    const double* prev = &out.values[static_cast<size_t>(w - 2) * n * n];
    double* cur = &out.values[static_cast<size_t>(w - 1) * n * n];
    for (int i = 0; i < n; ++i) {
      for (int x = 0; x < n; ++x) {
        const double gx = prev[i * n + x];
        if (x == t || gx == 0.0) continue;
        for (int j = 0; j < n; ++j) {
          if (j != t) cur[i * n + j] += gx * s.at(x, j);
        }
      }
    }
  }
  return out;
}

double CaptureProbability(const MarkovStrategy& s, int t, int z,
                          const PatrolInstance& g) {
  const int n = s.n;
  std::vector<double> row(n), next(n);
  for (int j = 0; j < n; ++j) row[j] = j == t ? 0.0 : s.at(z, j);
  for (int w = 2; w <= g.deadline(t); ++w) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int x = 0; x < n; ++x) {
      if (x == t || row[x] == 0.0) continue;
      for (int j = 0; j < n; ++j) next[j] += row[x] * s.at(x, j);
    }
    next[t] = 0.0;
    row.swap(next);
  }
  double survive = 0.0;
  for (double v : row) survive += v;
  return 1.0 - survive;
}

std::vector<double> SurvivalAll(const MarkovStrategy& s, int t, int horizon) {
  const int n = s.n;
  std::vector<double> f(n, 1.0), next(n);
  for (int w = 1; w <= horizon; ++w) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != t) acc += s.at(i, j) * f[j];
      }
      next[i] = acc;
    }
    f.swap(next);
  }
  return f;
}

std::string ActionName(const IntruderAction& a, const PatrolInstance& g) {
  if (a.stay_out) return "stay-out";
  return "enter-when(" + g.ids[a.t] + "," + g.ids[a.z] + ")";
}

IntruderAction ParseAction(const std::string& text, const PatrolInstance& g) {
  static const std::regex kEnter(R"(\s*enter[-_]when\s*\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)\s*)");
  static const std::regex kStay(R"(\s*stay[-_]out\s*)");
  std::smatch m;
  if (std::regex_match(text, kStay)) return IntruderAction::StayOut();
  if (!std::regex_match(text, m, kEnter)) throw InputError("cannot parse action '" + text + "'");
  const int t = g.index_of(m[1].str());
  const int z = g.index_of(m[2].str());
  if (t < 0 || !g.is_target[t]) throw InputError("action target '" + m[1].str() + "' is not a target");
  if (z < 0) throw InputError("action vertex '" + m[2].str() + "' is unknown");
  return IntruderAction::EnterWhen(t, z);
}

Utilities UtilitiesFromCapture(double p, int t, const PatrolInstance& g) {
  const double total = g.total_patroller_value();
  Utilities u;
  u.intruder = p * (-g.epsilon) + (1.0 - p) * g.intruder_value(t);
  u.patroller = p * total + (1.0 - p) * (total - g.patroller_value(t));
  return u;
}

Utilities ActionUtilities(const MarkovStrategy& s, const IntruderAction& a,
                          const PatrolInstance& g) {
  if (a.stay_out) return {0.0, g.total_patroller_value()};
  return UtilitiesFromCapture(CaptureProbability(s, a.t, a.z, g), a.t, g);
}

std::vector<ActionValue> EvaluateActions(const MarkovStrategy& s,
                                         const ReducedInstance& r) {
  const PatrolInstance& g = r.base;
  std::vector<ActionValue> out;
  out.push_back({IntruderAction::StayOut(), 0.0, {0.0, g.total_patroller_value()}});
  for (int t : g.targets()) {
    const std::vector<double> survive = SurvivalAll(s, t, g.deadline(t));
    for (int z : r.vt[t]) {
      const double p = 1.0 - survive[z];
      out.push_back({IntruderAction::EnterWhen(t, z), p, UtilitiesFromCapture(p, t, g)});
    }
  }
  return out;
}

IntruderAction SelectBestResponse(const std::vector<ActionValue>& values,
                                  const PatrolInstance& g) {
  double best_i = -INFINITY;
  for (const auto& v : values) best_i = std::max(best_i, v.eu.intruder);
  double best_p = -INFINITY;
  for (const auto& v : values) {
    if (v.eu.intruder >= best_i - kIndifference) best_p = std::max(best_p, v.eu.patroller);
  }
  const ActionValue* pick = nullptr;
  for (const auto& v : values) {
    if (v.eu.intruder < best_i - kIndifference || v.eu.patroller < best_p - kIndifference) continue;
    if (pick == nullptr) {
      pick = &v;
      continue;
    }
    if (pick->action.stay_out) continue;
    if (v.action.stay_out) {
      pick = &v;
      continue;
    }
    const auto key = [&](const IntruderAction& a) {
      return std::make_pair(g.ids[a.t], g.ids[a.z]);
    };
    if (key(v.action) < key(pick->action)) pick = &v;
  }
  return pick->action;
}

IntruderAction BestResponse(const MarkovStrategy& s, const ReducedInstance& r) {
  return SelectBestResponse(EvaluateActions(s, r), r.base);
}

double Simulate(const MarkovStrategy& s, const IntruderAction& a,
                const PatrolInstance& g, int trials, std::uint64_t seed) {
  if (a.stay_out) throw InputError("simulate: stay-out has nothing to simulate");
  if (trials < 1) throw InputError("simulate: trials must be >= 1");
  const int n = s.n;
  std::vector<std::discrete_distribution<int>> rows;
  rows.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> w(s.alpha.begin() + static_cast<size_t>(i) * n,
                          s.alpha.begin() + static_cast<size_t>(i + 1) * n);
    for (double& x : w) x = std::max(0.0, x);
    rows.emplace_back(w.begin(), w.end());
  }
  std::mt19937_64 rng(seed);
  const int horizon = g.deadline(a.t);
  int captured = 0;
  for (int k = 0; k < trials; ++k) {
    int at = a.z;
    for (int w = 0; w < horizon; ++w) {
      at = rows[at](rng);
      if (at == a.t) {
        ++captured;
        break;
      }
    }
  }
  return static_cast<double>(captured) / trials;
}

}  // namespace patrol

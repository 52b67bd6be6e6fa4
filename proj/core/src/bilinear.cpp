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

#include "patrol/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

#include "json.hpp"
#include "patrol/parallel.hpp"

namespace patrol {

namespace {

// Compiled view of an AlphaProblem. Values are divided by `scale` so that
// tolerances behave uniformly across instances.
class Program {
 public:
  explicit Program(const AlphaProblem& p) : problem_(p), g_(p.instance.base) {
    n_ = g_.n();
    has_u_ = p.objective == ObjectiveKind::kMinimizeU;
    for (const auto& c : p.constraints) has_u_ = has_u_ || c.bound == BoundKind::kU;
    targets_ = g_.targets();
    slot_.assign(n_, -1);
    for (size_t k = 0; k < targets_.size(); ++k) slot_[targets_[k]] = static_cast<int>(k);
    scale_ = 1.0;
    for (int t : targets_) {
      scale_ = std::max({scale_, g_.intruder_value(t) + g_.epsilon, g_.patroller_value(t)});
    }
    mask_.assign(static_cast<size_t>(n_) * n_, 0);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) mask_[i * n_ + j] = g_.arc(i, j);
    }
    tied_ = p.tie_rows;
    if (tied_ && std::count(mask_.begin(), mask_.end(), 1) != n_ * n_) {
      throw std::invalid_argument("tie_rows requires a complete graph");
    }
  }

  int n() const { return n_; }
  bool has_u() const { return has_u_; }
  size_t alpha_dim() const { return tied_ ? n_ : static_cast<size_t>(n_) * n_; }
  size_t dim() const { return alpha_dim() + (has_u_ ? 1 : 0); }

  // Full row-major alpha for x.
  const double* Alpha(const double* x, std::vector<double>& buf) const {
    if (!tied_) return x;
    buf.resize(static_cast<size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) std::copy(x, x + n_, buf.begin() + static_cast<size_t>(i) * n_);
    return buf.data();
  }
  double scale() const { return scale_; }
  int constraint_count() const { return static_cast<int>(problem_.constraints.size()); }
  const PatrolInstance& graph() const { return g_; }

  struct State {
    std::vector<std::vector<double>> f;  // per target slot, (d + 1) x n
    std::vector<double> g;               // scaled constraint values
    double objective = 0.0;              // scaled, minimization form
  };

  double Capture(const State& st, int t, int z) const {
    const int d = g_.deadline(t);
    return 1.0 - st.f[slot_[t]][static_cast<size_t>(d) * n_ + z];
  }

  double IntruderEu(const State& st, const IntruderAction& a) const {
    return (g_.intruder_value(a.t) - Capture(st, a.t, a.z) * (g_.intruder_value(a.t) + g_.epsilon)) / scale_;
  }

  void Forward(const double* xc, State& st) const {
    std::vector<double> buf;
    const double* x = Alpha(xc, buf);
    st.f.resize(targets_.size());
    for (size_t k = 0; k < targets_.size(); ++k) {
      const int t = targets_[k];
      const int d = g_.deadline(t);
      auto& f = st.f[k];
      f.assign(static_cast<size_t>(d + 1) * n_, 0.0);
      std::fill(f.begin(), f.begin() + n_, 1.0);
      for (int w = 1; w <= d; ++w) {
        const double* prev = &f[static_cast<size_t>(w - 1) * n_];
        double* cur = &f[static_cast<size_t>(w) * n_];
        for (int i = 0; i < n_; ++i) {
          double acc = 0.0;
          const double* row = x + static_cast<size_t>(i) * n_;
          for (int j = 0; j < n_; ++j) {
            if (j != t) acc += row[j] * prev[j];
          }
          cur[i] = acc;
        }
      }
    }
    const double u = has_u_ ? xc[alpha_dim()] : 0.0;
    st.g.resize(problem_.constraints.size());
    for (size_t k = 0; k < problem_.constraints.size(); ++k) {
      const auto& c = problem_.constraints[k];
      double bound = 0.0;
      if (c.bound == BoundKind::kAction) bound = IntruderEu(st, problem_.focus);
      if (c.bound == BoundKind::kU) bound = u;
      st.g[k] = IntruderEu(st, c.action) - bound;
    }
    switch (problem_.objective) {
      case ObjectiveKind::kNone: st.objective = 0.0; break;
      case ObjectiveKind::kMinimizeU: st.objective = u; break;
      case ObjectiveKind::kMaximizePatroller: {
        const int s = problem_.focus.t;
        const double p = Capture(st, s, problem_.focus.z);
        st.objective = -(g_.total_patroller_value() - (1.0 - p) * g_.patroller_value(s)) / scale_;
        break;
      }
    }
  }

  // grad = w_obj * d(objective) + sum_k mult[k] * d(g_k).
  void Backward(const double* xc, const State& st, const std::vector<double>& mult,
                double w_obj, double* grad_out) const {
    std::vector<double> buf, full;
    const double* x = Alpha(xc, buf);
    double* grad = grad_out;
    if (tied_) {
      full.assign(static_cast<size_t>(n_) * n_ + 1, 0.0);
      grad = full.data();
    }
    std::fill(grad, grad + static_cast<size_t>(n_) * n_ + (has_u_ ? 1 : 0), 0.0);
    // dL / dp(t, z), per target slot.
    std::vector<std::vector<double>> c(targets_.size(), std::vector<double>(n_, 0.0));
    double gu = 0.0;
    auto coef = [&](int t) { return (g_.intruder_value(t) + g_.epsilon) / scale_; };
    for (size_t k = 0; k < problem_.constraints.size(); ++k) {
      if (mult[k] == 0.0) continue;
      const auto& con = problem_.constraints[k];
      c[slot_[con.action.t]][con.action.z] -= mult[k] * coef(con.action.t);
      if (con.bound == BoundKind::kAction) {
        c[slot_[problem_.focus.t]][problem_.focus.z] += mult[k] * coef(problem_.focus.t);
      } else if (con.bound == BoundKind::kU) {
        gu -= mult[k];
      }
    }
    if (w_obj != 0.0) {
      if (problem_.objective == ObjectiveKind::kMinimizeU) gu += w_obj;
      if (problem_.objective == ObjectiveKind::kMaximizePatroller) {
        const int s = problem_.focus.t;
        c[slot_[s]][problem_.focus.z] -= w_obj * g_.patroller_value(s) / scale_;
      }
    }
    std::vector<double> lam(n_), next(n_);
    for (size_t k = 0; k < targets_.size(); ++k) {
      const int t = targets_[k];
      const int d = g_.deadline(t);
      bool any = false;
      for (int z = 0; z < n_; ++z) {
        lam[z] = -c[k][z];  // p = 1 - f_d
        any = any || lam[z] != 0.0;
      }
      if (!any) continue;
      const auto& f = st.f[k];
      for (int w = d; w >= 1; --w) {
        const double* prev = &f[static_cast<size_t>(w - 1) * n_];
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i < n_; ++i) {
          const double li = lam[i];
          if (li == 0.0) continue;
          double* gr = grad + static_cast<size_t>(i) * n_;
          const double* row = x + static_cast<size_t>(i) * n_;
          for (int j = 0; j < n_; ++j) {
            if (j == t) continue;
            gr[j] += li * prev[j];
            next[j] += li * row[j];
          }
        }
        lam.swap(next);
      }
    }
    if (tied_) {
      std::fill(grad_out, grad_out + dim(), 0.0);
      for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) grad_out[j] += grad[static_cast<size_t>(i) * n_ + j];
      }
    }
    if (has_u_) grad_out[alpha_dim()] = gu;
  }

  void Project(double* x) const {
    std::vector<double> buf;
    std::vector<int> idx;
    if (tied_) {
      buf.assign(x, x + n_);
      ProjectSimplex(buf);
      std::copy(buf.begin(), buf.end(), x);
      return;
    }
    for (int i = 0; i < n_; ++i) {
      buf.clear();
      idx.clear();
      double* row = x + static_cast<size_t>(i) * n_;
      for (int j = 0; j < n_; ++j) {
        if (mask_[i * n_ + j]) {
          idx.push_back(j);
          buf.push_back(row[j]);
        } else {
          row[j] = 0.0;
        }
      }
      ProjectSimplex(buf);
      for (size_t k = 0; k < idx.size(); ++k) row[idx[k]] = buf[k];
    }
  }

  std::vector<double> RandomStart(std::mt19937_64& rng) const {
    std::vector<double> x(dim(), 0.0);
    std::exponential_distribution<double> expo(1.0);
    for (int i = 0; i < (tied_ ? 1 : n_); ++i) {
      double sum = 0.0;
      for (int j = 0; j < n_; ++j) {
        if (mask_[i * n_ + j]) sum += (x[i * n_ + j] = expo(rng));
      }
      for (int j = 0; j < n_; ++j) x[i * n_ + j] /= sum;
    }
    if (has_u_) {
      x.back() = 0.0;
      State st;
      Forward(x.data(), st);
      double worst = -std::numeric_limits<double>::infinity();
      for (size_t k = 0; k < problem_.constraints.size(); ++k) {
        worst = std::max(worst, st.g[k]);
      }
      x.back() = std::isfinite(worst) ? worst : 0.0;
    }
    return x;
  }

  MarkovStrategy ToStrategy(const std::vector<double>& x) const {
    MarkovStrategy s;
    s.n = n_;
    std::vector<double> buf;
    const double* a = Alpha(x.data(), buf);
    s.alpha.assign(a, a + static_cast<size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) {
      double sum = 0.0;
      for (int j = 0; j < n_; ++j) {
        double& a = s.alpha[i * n_ + j];
        if (a < 0.0 || !mask_[i * n_ + j]) a = 0.0;
        sum += a;
      }
      for (int j = 0; j < n_; ++j) s.alpha[i * n_ + j] /= sum;
    }
    return s;
  }

 private:
  const AlphaProblem& problem_;
  const PatrolInstance& g_;
  int n_ = 0;
  bool has_u_ = false;
  bool tied_ = false;
  double scale_ = 1.0;
  std::vector<int> targets_;
  std::vector<int> slot_;
  std::vector<std::uint8_t> mask_;
};

double InfNorm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Nonmonotone spectral projected gradient. `fn` writes the gradient and
// returns the value. Stops when the projected-gradient norm drops below
// `tol` or `done(x)` holds.
template <typename Fn, typename Done>
void Spg(const Program& prog, std::vector<double>& x, Fn fn, int max_iters,
         double tol, Done done) {
  const size_t dim = x.size();
  std::vector<double> g(dim), gn(dim), xn(dim), d(dim), probe(dim);
  double val = fn(x, g);
  std::deque<double> history{val};
  double step = 1.0;
  for (int it = 0; it < max_iters; ++it) {
    if (done(x)) return;
    for (size_t k = 0; k < dim; ++k) probe[k] = x[k] - g[k];
    prog.Project(probe.data());
    for (size_t k = 0; k < dim; ++k) probe[k] -= x[k];
    if (InfNorm(probe) <= tol) return;

    for (size_t k = 0; k < dim; ++k) d[k] = x[k] - step * g[k];
    prog.Project(d.data());
    double gd = 0.0;
    for (size_t k = 0; k < dim; ++k) {
      d[k] -= x[k];
      gd += g[k] * d[k];
    }
    if (gd >= 0.0) return;
    const double fmax = *std::max_element(history.begin(), history.end());
    double lam = 1.0;
    double vn = 0.0;
    for (int ls = 0; ls < 40; ++ls) {
      for (size_t k = 0; k < dim; ++k) xn[k] = x[k] + lam * d[k];
      vn = fn(xn, gn);
      if (vn <= fmax + 1e-4 * lam * gd) break;
      lam *= 0.5;
    }
    double sts = 0.0, sty = 0.0;
    for (size_t k = 0; k < dim; ++k) {
      const double s = xn[k] - x[k];
      const double y = gn[k] - g[k];
      sts += s * s;
      sty += s * y;
    }
    step = sty > 0.0 ? std::clamp(sts / sty, 1e-10, 1e10) : 1e4;
    x.swap(xn);
    g.swap(gn);
    val = vn;
    history.push_back(val);
    if (history.size() > 10) history.pop_front();
  }
}

double MaxViolation(const std::vector<double>& g) {
  double v = 0.0;
  for (double x : g) v = std::max(v, x);
  return v;
}

// Drives sum max(0, g_k + margin)^2 to zero from x.
bool Restore(const Program& prog, std::vector<double>& x, int iters, double tol_scaled) {
  const int K = prog.constraint_count();
  const double margin = 0.25 * tol_scaled;
  Program::State st;
  std::vector<double> mult(K);
  auto fn = [&](const std::vector<double>& y, std::vector<double>& grad) {
    prog.Forward(y.data(), st);
    double val = 0.0;
    for (int k = 0; k < K; ++k) {
      const double e = std::max(0.0, st.g[k] + margin);
      mult[k] = e;
      val += 0.5 * e * e;
    }
    prog.Backward(y.data(), st, mult, 0.0, grad.data());
    return val;
  };
  auto done = [&](const std::vector<double>& y) {
    prog.Forward(y.data(), st);
    return MaxViolation(st.g) <= 0.0;
  };
  Spg(prog, x, fn, iters, 1e-14, done);
  prog.Forward(x.data(), st);
  return MaxViolation(st.g) <= tol_scaled;
}

struct StartOutcome {
  bool found = false;
  std::vector<double> x;
  double violation = 0.0;  // original units
  double objective = 0.0;  // scaled minimization form
  int rounds = 0;
};

StartOutcome RunStart(const Program& prog, const SolverConfig& config,
                      std::uint64_t seed, bool optimize) {
  std::mt19937_64 rng(seed);
  StartOutcome out;
  out.x = prog.RandomStart(rng);
  const double tol = config.feas_tol / prog.scale();
  const int K = prog.constraint_count();
  Program::State st;

  if (!optimize) {
    out.found = Restore(prog, out.x, config.max_iters * config.outer_iters, tol);
  } else {
    std::vector<double> lambda(K, 0.0), mult(K);
    double rho = config.rho0;
    double prev_violation = std::numeric_limits<double>::infinity();
    double inner_tol = 1e-3;
    for (int outer = 0; outer < config.outer_iters; ++outer) {
      out.rounds = outer + 1;
      auto fn = [&](const std::vector<double>& y, std::vector<double>& grad) {
        prog.Forward(y.data(), st);
        double val = st.objective;
        for (int k = 0; k < K; ++k) {
          const double e = std::max(0.0, lambda[k] + rho * st.g[k]);
          mult[k] = e;
          val += (e * e - lambda[k] * lambda[k]) / (2.0 * rho);
        }
        prog.Backward(y.data(), st, mult, 1.0, grad.data());
        return val;
      };
      Spg(prog, out.x, fn, config.max_iters, inner_tol, [](const std::vector<double>&) { return false; });
      prog.Forward(out.x.data(), st);
      const double violation = MaxViolation(st.g);
      if (violation <= tol && inner_tol <= config.opt_tol) break;
      for (int k = 0; k < K; ++k) lambda[k] = std::max(0.0, lambda[k] + rho * st.g[k]);
      if (violation > 0.25 * prev_violation) rho = std::min(rho * config.rho_growth, config.rho_max);
      prev_violation = violation;
      inner_tol = std::max(config.opt_tol, inner_tol * 0.1);
    }
    prog.Forward(out.x.data(), st);
    if (MaxViolation(st.g) > 0.0) Restore(prog, out.x, config.max_iters * 4, tol);
  }
  prog.Project(out.x.data());
  prog.Forward(out.x.data(), st);
  out.violation = MaxViolation(st.g) * prog.scale();
  out.objective = st.objective;
  out.found = out.violation <= config.feas_tol;
  return out;
}

SolverResult Run(const AlphaProblem& problem, const SolverConfig& config, bool optimize) {
  Program prog(problem);
  const int starts = std::max(1, config.starts);
  std::vector<StartOutcome> outcomes(starts);
  std::vector<char> ran(starts, 0);
  auto body = [&](int k) {
    outcomes[k] = RunStart(prog, config, DeriveSeed(config.rng_seed, k), optimize);
    ran[k] = 1;
  };
  if (!optimize && config.jobs == 1) {
    for (int k = 0; k < starts; ++k) {
      body(k);
      if (outcomes[k].found) break;
    }
  } else {
    ParallelFor(starts, config.jobs, body);
  }

  SolverResult result;
  int best = -1;
  for (int k = 0; k < starts; ++k) {
    if (!ran[k]) continue;
    ++result.starts_run;
    const auto& o = outcomes[k];
    if (config.trace) {
      nlohmann::json line = {{"start", k}, {"found", o.found}, {"violation", o.violation},
                             {"objective", o.objective * prog.scale()}, {"rounds", o.rounds}};
      config.trace(line.dump());
    }
    if (!o.found) continue;
    if (best < 0) {
      best = k;
    } else if (optimize && o.objective < outcomes[best].objective - 1e-12) {
      best = k;
    }
    if (!optimize) break;
  }
  if (best < 0) return result;
  const auto& o = outcomes[best];
  result.found = true;
  result.best_start = best;
  result.strategy = prog.ToStrategy(o.x);
  result.max_violation = o.violation;
  const PatrolInstance& g = problem.instance.base;
  switch (problem.objective) {
    case ObjectiveKind::kMaximizePatroller:
      result.objective = ActionUtilities(result.strategy, problem.focus, g).patroller;
      break;
    case ObjectiveKind::kMinimizeU: {
      double u = -std::numeric_limits<double>::infinity();
      for (const auto& c : problem.constraints) {
        u = std::max(u, ActionUtilities(result.strategy, c.action, g).intruder);
      }
      result.u = u;
      result.objective = u;
      break;
    }
    case ObjectiveKind::kNone:
      break;
  }
  return result;
}

}  // namespace

void ProjectSimplex(std::vector<double>& v) {
  if (v.empty()) return;
  std::vector<double> s = v;
  std::sort(s.begin(), s.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  for (size_t k = 0; k < s.size(); ++k) {
    cum += s[k];
    const double t = (cum - 1.0) / static_cast<double>(k + 1);
    if (s[k] - t > 0.0) theta = t;
  }
  for (double& x : v) x = std::max(0.0, x - theta);
}

AlphaProblem StayOutProblem(const ReducedInstance& r) {
  AlphaProblem p;
  p.instance = r;
  for (int t : r.base.targets()) {
    for (int z : r.vt[t]) p.constraints.push_back({IntruderAction::EnterWhen(t, z), BoundKind::kZero});
  }
  return p;
}

AlphaProblem LeaderFollowerProblem(const ReducedInstance& r, const IntruderAction& sq) {
  AlphaProblem p;
  p.instance = r;
  p.objective = ObjectiveKind::kMaximizePatroller;
  p.focus = sq;
  for (int t : r.base.targets()) {
    for (int z : r.vt[t]) {
      const auto a = IntruderAction::EnterWhen(t, z);
      if (a != sq) p.constraints.push_back({a, BoundKind::kAction});
    }
  }
  return p;
}

AlphaProblem MinmaxProblem(const ReducedInstance& r) {
  AlphaProblem p;
  p.instance = r;
  p.objective = ObjectiveKind::kMinimizeU;
  for (int t : r.base.targets()) {
    for (int z : r.vt[t]) p.constraints.push_back({IntruderAction::EnterWhen(t, z), BoundKind::kU});
  }
  return p;
}

SolverResult SolveFeasibility(const AlphaProblem& problem, const SolverConfig& config) {
  if (problem.objective != ObjectiveKind::kNone) {
    throw std::invalid_argument("SolveFeasibility: problem carries an objective");
  }
  return Run(problem, config, false);
}

SolverResult Maximize(const AlphaProblem& problem, const SolverConfig& config) {
  if (problem.objective == ObjectiveKind::kNone) {
    throw std::invalid_argument("Maximize: problem has no objective");
  }
  return Run(problem, config, true);
}

std::vector<double> ConstraintValues(const AlphaProblem& problem,
                                     const MarkovStrategy& s, double u) {
  AlphaProblem untied = problem;
  untied.tie_rows = false;
  Program prog(untied);
  std::vector<double> x(prog.dim());
  std::copy(s.alpha.begin(), s.alpha.end(), x.begin());
  if (prog.has_u()) x.back() = u / prog.scale();
  Program::State st;
  prog.Forward(x.data(), st);
  for (double& v : st.g) v *= prog.scale();
  return st.g;
}

GradientCheckReport GradientCheck(const AlphaProblem& problem,
                                  const MarkovStrategy& point, double u, double h) {
  if (problem.tie_rows) throw std::invalid_argument("GradientCheck: tied rows unsupported");
  Program prog(problem);
  const PatrolInstance& g = problem.instance.base;
  const int n = prog.n();
  const int K = prog.constraint_count();
  std::vector<double> x(prog.dim());
  std::copy(point.alpha.begin(), point.alpha.end(), x.begin());
  if (prog.has_u()) x.back() = u / prog.scale();

  GradientCheckReport report;
  Program::State st;
  std::vector<double> grad(prog.dim());
  // Function index -1 is the objective.
  for (int fi = (problem.objective == ObjectiveKind::kNone ? 0 : -1); fi < K; ++fi) {
    std::vector<double> mult(K, 0.0);
    if (fi >= 0) mult[fi] = 1.0;
    const double w_obj = fi < 0 ? 1.0 : 0.0;
    prog.Forward(x.data(), st);
    prog.Backward(x.data(), st, mult, w_obj, grad.data());
    auto value = [&](const std::vector<double>& y) {
      prog.Forward(y.data(), st);
      return fi < 0 ? st.objective : st.g[fi];
    };
    for (size_t k = 0; k < prog.dim(); ++k) {
      const bool is_alpha = k < static_cast<size_t>(n) * n;
      if (is_alpha) {
        const int i = static_cast<int>(k) / n, j = static_cast<int>(k) % n;
        if (!g.arc(i, j)) continue;
        if (x[k] < h || x[k] > 1.0 - h) {
          ++report.skipped;
          continue;
        }
      }
      std::vector<double> y = x;
      y[k] = x[k] + h;
      const double up = value(y);
      y[k] = x[k] - h;
      const double down = value(y);
      const double fd = (up - down) / (2.0 * h);
      const double err = std::abs(grad[k] - fd) / std::max({1.0, std::abs(grad[k]), std::abs(fd)});
      report.max_rel_error = std::max(report.max_rel_error, err);
      ++report.checked;
    }
  }
  return report;
}

}  // namespace patrol

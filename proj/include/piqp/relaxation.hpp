// Copyright 2026 The piqp Authors
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

// Continuous relaxation with hyperbolic edge constraints
//
//   maximize    sum_{uv} b_uv x_uv
//   subject to  A_hat x <= W e,   x_u x_v >= x_uv^2,   x in [0,1]^n.
//
// Because every b_uv is nonnegative the edge variables are tight at the
// optimum, x_uv = sqrt(x_u x_v), and the program reduces to maximizing the
// concave function f(x) = sum_{uv} b_uv sqrt(x_u x_v) over the polytope. We
// run projected gradient ascent with an Armijo backtracking line search; the
// Euclidean projection onto {A_hat x <= W} n box is computed by coordinate
// ascent on its (p-dimensional) dual.

#ifndef PIQP_RELAXATION_HPP_
#define PIQP_RELAXATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "piqp/greedy.hpp"
#include "piqp/instance.hpp"

namespace piqp {

struct SolverConfig {
  int max_iterations = 5000;
  double rel_tol = 1e-7;
  double smoothing_eps = 1e-12;
  std::uint64_t seed = 0;
  int multistarts = 3;
};

struct EdgeValue {
  int u;
  int v;
  double value;  // sqrt(x_u x_v)
};

struct RelaxationSolution {
  std::vector<double> x_star;
  std::vector<EdgeValue> edge_vals;
  double value = 0.0;
  /// max_i (A_hat x - W)_+ after the final feasibility shrink.
  double residual = 0.0;
  /// Factor the iterate was divided by to restore exact feasibility (>= 1).
  double shrink = 1.0;
  int iterations = 0;
  bool converged = true;
  int start = 0;  // index of the multistart that won
  std::vector<double> history;  // objective after each accepted step
};

namespace detail {

struct WeightedEdge {
  int u;
  int v;
  double b;
};

inline std::vector<WeightedEdge> relaxation_edges(const ScaledInstance& s) {
  std::vector<WeightedEdge> edges;
  for (int u = 0; u < s.n(); ++u) {
    if (s.fixed[u]) continue;
    for (int v = u + 1; v < s.n(); ++v) {
      if (!s.fixed[v] && s.problem.B(u, v) > 0) {
        edges.push_back({u, v, static_cast<double>(s.problem.B(u, v))});
      }
    }
  }
  return edges;
}

inline double hyperbolic_value(const std::vector<WeightedEdge>& edges,
                               const std::vector<double>& x) {
  double f = 0.0;
  for (const auto& e : edges) f += e.b * std::sqrt(x[e.u] * x[e.v]);
  return f;
}

/// Euclidean projection onto {y in [0, ub] : A y <= W}.
class PolytopeProjector {
 public:
  explicit PolytopeProjector(const ScaledInstance& s)
      : s_(s), ub_(s.n()), mu_(s.p(), 0.0) {
    for (int j = 0; j < s.n(); ++j) ub_[j] = s.fixed[j] ? 0.0 : 1.0;
  }

  const std::vector<double>& upper() const { return ub_; }

  std::vector<double> operator()(const std::vector<double>& z) {
    const int n = s_.n();
    const int p = s_.p();
    const double W = static_cast<double>(s_.W);
    std::vector<double> shift(n, 0.0);  // (A^T mu)_j
    auto rebuild_shift = [&] {
      std::fill(shift.begin(), shift.end(), 0.0);
      for (int i = 0; i < p; ++i) {
        if (mu_[i] == 0.0) continue;
        for (int j = 0; j < n; ++j) shift[j] += s_.problem.A(i, j) * mu_[i];
      }
    };
    auto y_of = [&](int j, double extra) {
      return std::clamp(z[j] - shift[j] - extra, 0.0, ub_[j]);
    };
    auto row_residual = [&](int i, double mu_i) {
      // Residual of row i if mu_i replaced its current value.
      const double delta = mu_i - mu_[i];
      double r = -W;
      for (int j = 0; j < n; ++j) {
        const double a = static_cast<double>(s_.problem.A(i, j));
        if (a != 0.0) r += a * y_of(j, a * delta);
      }
      return r;
    };

    rebuild_shift();
    for (int sweep = 0; sweep < 500; ++sweep) {
      bool done = true;
      for (int i = 0; i < p; ++i) {
        const double r_now = row_residual(i, mu_[i]);
        const bool violated = r_now > 1e-13 * W;
        const bool slack_with_price = mu_[i] > 0.0 && r_now < -1e-10 * W;
        if (!violated && !slack_with_price) continue;
        done = false;
        double new_mu = 0.0;
        if (row_residual(i, 0.0) > 0.0) {
          double lo = 0.0;
          double hi = 0.0;
          for (int j = 0; j < n; ++j) {
            const double a = static_cast<double>(s_.problem.A(i, j));
            if (a > 0.0) hi = std::max(hi, (z[j] - shift[j] + a * mu_[i]) / a);
          }
          hi = std::max(hi, 1e-300);
          for (int it = 0; it < 200 && lo < hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (row_residual(i, mid) > 0.0) {
              lo = mid;
            } else {
              hi = mid;
            }
          }
          new_mu = hi;
        }
        const double delta = new_mu - mu_[i];
        for (int j = 0; j < n; ++j) shift[j] += s_.problem.A(i, j) * delta;
        mu_[i] = new_mu;
      }
      if (done) break;
    }
    std::vector<double> y(n);
    for (int j = 0; j < n; ++j) y[j] = y_of(j, 0.0);
    return y;
  }

 private:
  const ScaledInstance& s_;
  std::vector<double> ub_;
  std::vector<double> mu_;  // warm start across calls
};

/// Scales x down until A_hat x <= W holds in floating point; returns the factor.
inline double shrink_to_feasible(const ScaledInstance& s, std::vector<double>& x) {
  double total_factor = 1.0;
  for (int round = 0; round < 64; ++round) {
    double worst = 1.0;
    for (int i = 0; i < s.p(); ++i) {
      double use = 0.0;
      for (int j = 0; j < s.n(); ++j) use += s.problem.A(i, j) * x[j];
      if (use > static_cast<double>(s.W)) worst = std::max(worst, use / static_cast<double>(s.W));
    }
    if (worst <= 1.0) return total_factor;
    // Step just past the ratio so rounding in the sums cannot leave us above W.
    const double factor = std::nextafter(worst, 2.0 * worst) * (1.0 + 1e-15 * (round + 1));
    for (auto& v : x) v /= factor;
    total_factor *= factor;
  }
  throw std::logic_error("could not restore feasibility of relaxation iterate");
}

struct AscentResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

// Accelerated projected gradient ascent with backtracking. The momentum
// point is clamped to the box so the gradient stays defined; momentum is
// dropped whenever the step from it fails to improve on the current iterate,
// so accepted iterates are monotone.
inline AscentResult projected_ascent(const ScaledInstance& s,
                                     const std::vector<WeightedEdge>& edges,
                                     std::vector<double> x0, const SolverConfig& cfg) {
  const int n = s.n();
  PolytopeProjector project(s);
  AscentResult res;
  res.x = project(x0);
  res.value = hyperbolic_value(edges, res.x);
  res.history.push_back(res.value);
  if (edges.empty()) {
    res.converged = true;
    return res;
  }

  std::vector<double> g(n), trial(n), v(n), prev = res.x;
  double sigma = 0.5;  // step length in units of the gradient direction
  int quiet_steps = 0;
  int momentum_k = 0;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const double beta = momentum_k > 0 ? (momentum_k - 1.0) / (momentum_k + 2.0) : 0.0;
    for (int j = 0; j < n; ++j) {
      v[j] = std::clamp(res.x[j] + beta * (res.x[j] - prev[j]), 0.0, project.upper()[j]);
    }
    const double fv = beta > 0.0 ? hyperbolic_value(edges, v) : res.value;

    std::fill(g.begin(), g.end(), 0.0);
    for (const auto& e : edges) {
      const double r = std::sqrt(v[e.u] * v[e.v] + cfg.smoothing_eps);
      g[e.u] += e.b * v[e.v] / (2.0 * r);
      g[e.v] += e.b * v[e.u] / (2.0 * r);
    }
    for (int j = 0; j < n; ++j) {
      if (s.fixed[j]) g[j] = 0.0;
    }
    double gnorm = 0.0;
    for (double gj : g) gnorm += gj * gj;
    gnorm = std::sqrt(gnorm);
    if (gnorm == 0.0 && beta == 0.0) {
      res.converged = true;
      break;
    }

    double step = std::min(sigma * 2.0, 1e3);
    bool accepted = false;
    bool stationary = gnorm == 0.0;
    std::vector<double> y;
    double fy = 0.0;
    while (!stationary) {
      for (int j = 0; j < n; ++j) trial[j] = v[j] + (step / gnorm) * g[j];
      y = project(trial);
      double move = 0.0;
      double slope = 0.0;
      for (int j = 0; j < n; ++j) {
        const double d = y[j] - v[j];
        move = std::max(move, std::abs(d));
        slope += g[j] * d;
      }
      if (move <= 1e-15) {
        stationary = true;
        break;
      }
      fy = hyperbolic_value(edges, y);
      if (fy > fv && fy >= fv + 1e-4 * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
      if (step < 1e-14) stationary = true;
    }
    res.iterations = it + 1;
    if (!accepted || fy <= res.value) {
      if (beta > 0.0) {
        momentum_k = 0;  // restart from the current iterate
        prev = res.x;
        continue;
      }
      res.converged = stationary;
      break;
    }
    const double gain = (fy - res.value) / std::max(std::abs(fy), 1e-300);
    prev = std::move(res.x);
    res.x = std::move(y);
    res.value = fy;
    res.history.push_back(fy);
    sigma = step;
    ++momentum_k;
    quiet_steps = gain < cfg.rel_tol ? quiet_steps + 1 : 0;
    if (quiet_steps >= 5) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace detail

/// Solves the hyperbolic relaxation of the scaled instance. Starting points:
/// a uniform interior point, the greedy (t = 1) indicator, then seeded
/// random points. The best final objective wins. The returned x_star always
/// satisfies A_hat x_star <= W exactly as evaluated in double precision.
inline RelaxationSolution solve_relaxation(const ScaledInstance& s, const SolverConfig& cfg) {
  if (!(cfg.rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (cfg.smoothing_eps < 0.0) throw std::invalid_argument("smoothing_eps must be >= 0");
  if (cfg.max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
  const int n = s.n();
  const auto edges = detail::relaxation_edges(s);

  std::vector<std::vector<double>> starts;
  {
    std::vector<double> interior(n, 0.0);
    double theta = 1.0;
    for (int i = 0; i < s.p(); ++i) {
      double load = 0.0;
      for (int j = 0; j < n; ++j) {
        if (!s.fixed[j]) load += static_cast<double>(s.problem.A(i, j));
      }
      if (load > 0.0) theta = std::min(theta, static_cast<double>(s.W) / load);
    }
    for (int j = 0; j < n; ++j) interior[j] = s.fixed[j] ? 0.0 : theta;
    starts.push_back(std::move(interior));
  }
  if (cfg.multistarts >= 2) {
    const auto g = greedy_solve(s, GreedyConfig{1});
    starts.emplace_back(g.x.begin(), g.x.end());
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (static_cast<int>(starts.size()) < std::max(1, cfg.multistarts)) {
    std::vector<double> r(n);
    for (int j = 0; j < n; ++j) r[j] = s.fixed[j] ? 0.0 : unif(rng);
    starts.push_back(std::move(r));
  }

  RelaxationSolution best;
  bool have = false;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    auto run = detail::projected_ascent(s, edges, starts[k], cfg);
    if (!have || run.value > best.value) {
      best.x_star = std::move(run.x);
      best.value = run.value;
      best.iterations = run.iterations;
      best.converged = run.converged;
      best.history = std::move(run.history);
      best.start = static_cast<int>(k);
      have = true;
    }
  }

  for (int j = 0; j < n; ++j) best.x_star[j] = std::clamp(best.x_star[j], 0.0, s.fixed[j] ? 0.0 : 1.0);
  best.shrink = detail::shrink_to_feasible(s, best.x_star);
  best.residual = 0.0;
  for (int i = 0; i < s.p(); ++i) {
    double use = 0.0;
    for (int j = 0; j < n; ++j) use += s.problem.A(i, j) * best.x_star[j];
    best.residual = std::max(best.residual, use - static_cast<double>(s.W));
  }
  best.edge_vals.clear();
  best.value = 0.0;
  for (const auto& e : edges) {
    const double xe = std::sqrt(best.x_star[e.u] * best.x_star[e.v]);
    best.edge_vals.push_back({e.u, e.v, xe});
    best.value += e.b * xe;
  }
  return best;
}

/// Per-constraint slack of  sum_u a_iu sqrt(x_u) <= 2 W sqrt(a_max n / beta),
/// which holds at every feasible point when a_max <= beta <= W. A negative
/// slack means the point is not feasible and is reported as a logic error.
inline std::vector<double> check_sqrt_budget_bound(const RelaxationSolution& rs,
                                                   const ScaledInstance& s, double beta) {
  const double a_max = static_cast<double>(s.active_a_max());
  const double W = static_cast<double>(s.W);
  if (!(beta >= a_max && beta <= W && beta > 0.0)) {
    throw std::invalid_argument("beta must satisfy a_max <= beta <= W");
  }
  const double rhs = 2.0 * W * std::sqrt(a_max * s.n() / beta);
  std::vector<double> slack(s.p());
  for (int i = 0; i < s.p(); ++i) {
    double lhs = 0.0;
    for (int u = 0; u < s.n(); ++u) lhs += s.problem.A(i, u) * std::sqrt(rs.x_star[u]);
    slack[i] = rhs - lhs;
    if (slack[i] < 0.0) {
      throw std::logic_error("square-root budget bound violated in constraint " +
                             std::to_string(i));
    }
  }
  return slack;
}

}  // namespace piqp

#endif  // PIQP_RELAXATION_HPP_

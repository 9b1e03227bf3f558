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

// Solutions derived from the hyperbolic relaxation:
//
//  * randomized rounding: Y_u = 1 with probability sqrt(x*_u) / lambda,
//    lambda = max(1, 2 sqrt(a_max n / beta)), so E[G_i(Y)] <= W and
//    E[F(Y)] = OPT(P*) / lambda^2;
//  * best edge: the single pair with the largest benefit;
//  * local knapsack: a center v chosen from x*, plus the best subset of its
//    neighbourhood found by the (p+1)-rounding of the neighbourhood knapsack.

#ifndef PIQP_ROUNDING_HPP_
#define PIQP_ROUNDING_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "piqp/instance.hpp"
#include "piqp/mkp.hpp"
#include "piqp/relaxation.hpp"

namespace piqp {

struct RoundingConfig {
  /// Lower bound on the budgets used in lambda; defaults to W.
  double beta = 0.0;
  /// Number of rounding trials; 0 means ceil(n^(1/2 + epsilon)).
  int trials = 0;
  double epsilon = 0.1;
  /// Overshoot tolerance used only in the trial statistics.
  double delta = 0.1;
  double gamma = 0.1;
  std::uint64_t seed = 0;
  /// Repair infeasible trials instead of discarding them.
  bool repair = true;
};

inline int default_trials(int n, double epsilon) {
  return std::max(1, static_cast<int>(std::ceil(std::pow(std::max(n, 1), 0.5 + epsilon) - 1e-9)));
}

inline double compute_lambda(const ScaledInstance& s, double beta) {
  const double a_max = std::max<double>(1.0, static_cast<double>(s.active_a_max()));
  const double n = std::max(1, s.n());
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  return std::max(1.0, 2.0 * std::sqrt(a_max * n / beta));
}

/// One independent draw. Usage and objective are computed on the scaled
/// problem; the draw may be infeasible.
template <class Rng>
BinarySolution round_once(const ScaledInstance& s, const RelaxationSolution& rs, double lambda,
                          Rng& rng) {
  if (lambda < 1.0) throw std::invalid_argument("lambda must be >= 1");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Assignment y(s.n(), 0);
  for (int u = 0; u < s.n(); ++u) {
    const double prob = std::min(1.0, std::sqrt(rs.x_star[u]) / lambda);
    // Always draw so the stream position does not depend on x*.
    const double r = unif(rng);
    y[u] = (!s.fixed[u] && r < prob) ? 1 : 0;
  }
  return evaluate(s.problem, std::move(y));
}

/// The endpoints of the heaviest edge (ties to the smallest pair).
inline BinarySolution best_edge_solution(const ScaledInstance& s) {
  int bu = -1, bv = -1;
  std::int64_t best = 0;
  for (int u = 0; u < s.n(); ++u) {
    if (s.fixed[u]) continue;
    for (int v = u + 1; v < s.n(); ++v) {
      if (s.fixed[v]) continue;
      if (s.problem.B(u, v) > best) {
        best = s.problem.B(u, v);
        bu = u;
        bv = v;
      }
    }
  }
  Assignment x(s.n(), 0);
  if (bu >= 0) {
    x[bu] = 1;
    x[bv] = 1;
  }
  auto sol = evaluate(s.problem, std::move(x));
  if (!feasible(s.problem, sol)) {
    throw std::logic_error("best edge does not fit; instance was not pruned");
  }
  return sol;
}

/// Center score sum_{u in N(v)} b_uv sqrt(x*_u) / lambda for every vertex.
inline std::vector<double> neighborhood_mass(const ScaledInstance& s,
                                             const RelaxationSolution& rs, double lambda) {
  std::vector<double> mass(s.n(), 0.0);
  for (int v = 0; v < s.n(); ++v) {
    if (s.fixed[v]) continue;
    for (int u = 0; u < s.n(); ++u) {
      if (u != v && s.problem.B(u, v) > 0) {
        mass[v] += static_cast<double>(s.problem.B(u, v)) * std::sqrt(rs.x_star[u]) / lambda;
      }
    }
  }
  return mass;
}

struct LocalKnapsack {
  int center = -1;
  MkpProblem problem;           // items = neighbours of the center
  std::vector<int> items;       // vertex of each knapsack item
  BinarySolution solution;      // on the scaled problem
};

inline LocalKnapsack local_knapsack_detail(const ScaledInstance& s,
                                           const RelaxationSolution& rs, double lambda) {
  LocalKnapsack lk;
  if (!has_quadratic_benefit(s.problem)) {
    lk.solution = zero_solution(s.problem);
    return lk;
  }
  const auto mass = neighborhood_mass(s, rs, lambda);
  for (int v = 0; v < s.n(); ++v) {
    if (s.fixed[v]) continue;
    if (lk.center < 0 || mass[v] > mass[lk.center]) lk.center = v;
  }
  const int v = lk.center;
  for (int u = 0; u < s.n(); ++u) {
    if (u != v && !s.fixed[u] && s.problem.B(u, v) > 0) lk.items.push_back(u);
  }
  const int m = static_cast<int>(lk.items.size());
  lk.problem.b.resize(m);
  lk.problem.A = Matrix<std::int64_t>(s.p(), m);
  lk.problem.budgets.resize(s.p());
  for (int i = 0; i < s.p(); ++i) {
    lk.problem.budgets[i] = s.W - s.problem.A(i, v);
    if (lk.problem.budgets[i] < 0) {
      throw std::logic_error("center vertex does not fit its own budget");
    }
  }
  for (int k = 0; k < m; ++k) {
    lk.problem.b[k] = s.problem.B(v, lk.items[k]);
    for (int i = 0; i < s.p(); ++i) lk.problem.A(i, k) = s.problem.A(i, lk.items[k]);
  }
  const auto z = round_p_plus_1(lk.problem);
  Assignment x(s.n(), 0);
  x[v] = 1;
  for (int k = 0; k < m; ++k) {
    if (z.x[k]) x[lk.items[k]] = 1;
  }
  lk.solution = evaluate(s.problem, std::move(x));
  return lk;
}

inline BinarySolution local_knapsack_solution(const ScaledInstance& s,
                                              const RelaxationSolution& rs, double lambda) {
  return local_knapsack_detail(s, rs, lambda).solution;
}

/// Drops selected vertices until the point is feasible. Each drop removes
/// the vertex with the smallest (marginal benefit) / (overshoot-weighted
/// weight); ties go to the largest index.
inline BinarySolution repair_infeasible(BinarySolution y, const ScaledInstance& s) {
  y = evaluate(s.problem, std::move(y.x));
  const auto& P = s.problem;
  for (;;) {
    std::vector<std::int64_t> over(s.p(), 0);
    bool ok = true;
    for (int i = 0; i < s.p(); ++i) {
      over[i] = std::max<std::int64_t>(0, y.usage[i] - P.budgets[i]);
      if (over[i] > 0) ok = false;
    }
    if (ok) return y;
    int drop = -1;
    std::int64_t drop_benefit = 0, drop_weight = 0;
    for (int v = 0; v < s.n(); ++v) {
      if (!y.x[v]) continue;
      std::int64_t weight = 0;
      for (int i = 0; i < s.p(); ++i) weight += over[i] * P.A(i, v);
      if (weight == 0) continue;  // dropping v does not help
      std::int64_t benefit = P.c[v];
      for (int u = 0; u < s.n(); ++u) {
        if (y.x[u]) benefit += P.B(u, v);
      }
      const bool better =
          drop < 0 || static_cast<__int128>(benefit) * drop_weight <=
                          static_cast<__int128>(drop_benefit) * weight;
      if (better) {
        drop = v;
        drop_benefit = benefit;
        drop_weight = weight;
      }
    }
    if (drop < 0) throw std::logic_error("repair cannot reduce an overshoot");
    y.x[drop] = 0;
    y = evaluate(P, std::move(y.x));
  }
}

struct TrialRecord {
  std::int64_t objective = 0;
  std::vector<std::int64_t> usage;
  bool feasible = false;
};

struct TrialStats {
  std::vector<TrialRecord> trials;
  double feasibility_rate = 0.0;
  /// Fraction of trials with G_i(Y) <= (1 + delta) W for every i.
  double within_delta_rate = 0.0;
  double mean_objective = 0.0;
  std::vector<double> mean_usage;

  static TrialStats from_trials(std::vector<TrialRecord> trials, std::int64_t W, double delta,
                                int p) {
    TrialStats st;
    st.trials = std::move(trials);
    st.mean_usage.assign(p, 0.0);
    if (st.trials.empty()) return st;
    int feas = 0, within = 0;
    for (const auto& t : st.trials) {
      feas += t.feasible;
      bool w = true;
      for (int i = 0; i < p; ++i) {
        st.mean_usage[i] += static_cast<double>(t.usage[i]);
        if (static_cast<double>(t.usage[i]) > (1.0 + delta) * static_cast<double>(W)) w = false;
      }
      within += w;
      st.mean_objective += static_cast<double>(t.objective);
    }
    const double k = static_cast<double>(st.trials.size());
    st.feasibility_rate = feas / k;
    st.within_delta_rate = within / k;
    st.mean_objective /= k;
    for (auto& m : st.mean_usage) m /= k;
    return st;
  }
};

struct RoundingOutcome {
  BinarySolution best;  // evaluated on the base instance
  bool found = false;
  TrialStats stats;
};

/// k independent rounding trials; trial j draws from its own generator
/// seeded by derive(seed, stream, j). The best feasible trial (after repair,
/// when enabled) is kept, compared on the base instance objective.
inline RoundingOutcome randomized_rounding(const ScaledInstance& s, const RelaxationSolution& rs,
                                           double lambda, int trials, const RoundingConfig& cfg,
                                           std::uint64_t stream) {
  RoundingOutcome out;
  std::vector<TrialRecord> records;
  records.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    auto y = round_once(s, rs, lambda, rng);
    const bool ok = feasible(s.problem, y);
    records.push_back({y.objective(), y.usage, ok});
    if (!ok) {
      if (!cfg.repair) continue;
      y = repair_infeasible(std::move(y), s);
    }
    auto in_base = evaluate(s.base, y.x);
    if (!out.found || in_base.objective() > out.best.objective()) {
      out.best = std::move(in_base);
      out.found = true;
    }
  }
  out.stats = TrialStats::from_trials(std::move(records), s.W, cfg.delta, s.p());
  if (!out.found) out.best = zero_solution(s.base);
  return out;
}

struct Diagnostics {
  double eps0 = 0.0;  // OPT(P*) / lambda^2
  double eps1 = 0.0;  // max_v sum_{u in N(v)} b_uv sqrt(x*_u) / lambda
  double eps2 = 0.0;  // max b_uv
  double log_factor = 0.0;  // log2(n)^(2 + gamma)
  std::string label;  // "i", "ii", "iii", "iv" or "degenerate"
  std::string favored;  // strategy the case analysis points to
};

/// Which regime of the concentration analysis applies at x*.
inline Diagnostics concentration_diagnostics(const RelaxationSolution& rs, const ScaledInstance& s,
                                             double lambda, double gamma = 0.1) {
  Diagnostics d;
  d.eps0 = rs.value / (lambda * lambda);
  const auto mass = neighborhood_mass(s, rs, lambda);
  for (double m : mass) d.eps1 = std::max(d.eps1, m);
  for (int u = 0; u < s.n(); ++u) {
    if (s.fixed[u]) continue;
    for (int v = u + 1; v < s.n(); ++v) {
      if (!s.fixed[v]) d.eps2 = std::max(d.eps2, static_cast<double>(s.problem.B(u, v)));
    }
  }
  d.log_factor = std::pow(std::log2(std::max(2, s.n())), 2.0 + gamma);
  if (d.eps2 == 0.0) {
    d.label = "degenerate";
    d.favored = "none";
  } else if (d.eps2 >= d.eps1) {
    if (d.eps0 < d.eps2 * d.log_factor) {
      d.label = "i";
      d.favored = "edge";
    } else {
      d.label = "ii";
      d.favored = "rounding";
    }
  } else if (d.eps0 > d.eps1 * d.log_factor) {
    d.label = "iii";
    d.favored = "rounding";
  } else {
    d.label = "iv";
    d.favored = "local";
  }
  return d;
}

}  // namespace piqp

#endif  // PIQP_ROUNDING_HPP_

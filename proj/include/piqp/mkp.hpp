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

// Multi-constraint 0-1 knapsack
//
//   maximize b.x  subject to  A x <= budgets,  x in {0,1}^n
//
// The LP relaxation is solved to an optimal *vertex* with a bounded-variable
// primal simplex on exact rationals. A vertex has at most p basic structural
// columns, hence at most p fractional coordinates. Rounding keeps the better
// of (a) the integral coordinates of the vertex and (b) the single fractional
// item with the largest b_j x_j; this is within a factor p + 1 of the LP value.

#ifndef PIQP_MKP_HPP_
#define PIQP_MKP_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "piqp/instance.hpp"

namespace piqp {

using Rational = boost::multiprecision::cpp_rational;

struct MkpProblem {
  std::vector<std::int64_t> b;
  Matrix<std::int64_t> A;  // p x n
  std::vector<std::int64_t> budgets;

  int n() const { return static_cast<int>(b.size()); }
  int p() const { return static_cast<int>(budgets.size()); }
};

inline std::vector<std::string> validate(const MkpProblem& prob) {
  std::vector<std::string> out;
  if (prob.A.rows() != prob.budgets.size() || prob.A.cols() != prob.b.size()) {
    out.push_back("A: expected a p x n matrix");
    return out;
  }
  for (int j = 0; j < prob.n(); ++j) {
    if (prob.b[j] < 0) out.push_back("b[" + std::to_string(j) + "]: negative benefit");
  }
  for (int i = 0; i < prob.p(); ++i) {
    if (prob.budgets[i] < 0) out.push_back("budgets[" + std::to_string(i) + "]: negative");
    for (int j = 0; j < prob.n(); ++j) {
      if (prob.A(i, j) < 0) {
        out.push_back("A[" + std::to_string(i) + "][" + std::to_string(j) + "]: negative");
      }
    }
  }
  return out;
}

struct VertexLpSolution {
  std::vector<Rational> x_exact;
  std::vector<double> x;
  Rational value_exact;
  double value = 0.0;
  std::vector<int> fractional;  // X_p: indices with 0 < x_j < 1
  int pivots = 0;
};

namespace detail {

/// Bounded-variable primal simplex in dense tableau form.
///
/// Columns 0..n-1 are the items (bounds [0, upper_j]), columns n..n+p-1 the
/// slacks (bounds [0, inf)). Entering and leaving choices follow Bland's
/// smallest-index rule, which rules out cycling on degenerate vertices.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const MkpProblem& prob, std::vector<std::uint8_t> excluded)
      : n_(prob.n()), p_(prob.p()), cols_(n_ + p_), tableau_(p_, std::vector<Rational>(cols_)),
        cost_(cols_), upper_(cols_), basic_value_(p_), basis_(p_), at_upper_(cols_, 0),
        in_basis_(cols_, -1) {
    for (int j = 0; j < n_; ++j) {
      cost_[j] = prob.b[j];
      upper_[j] = excluded[j] ? Rational(0) : Rational(1);
    }
    for (int i = 0; i < p_; ++i) {
      for (int j = 0; j < n_; ++j) tableau_[i][j] = prob.A(i, j);
      tableau_[i][n_ + i] = 1;
      basis_[i] = n_ + i;
      in_basis_[n_ + i] = i;
      basic_value_[i] = prob.budgets[i];
    }
  }

  int solve() {
    int pivots = 0;
    const int guard = 1000 * (cols_ + 1);
    for (int iter = 0;; ++iter) {
      if (iter > guard) throw std::logic_error("simplex iteration guard exceeded");
      const int entering = choose_entering();
      if (entering < 0) return pivots;
      pivots += step(entering);
    }
  }

  Rational value_of(int j) const {
    if (in_basis_[j] >= 0) return basic_value_[in_basis_[j]];
    return at_upper_[j] ? upper_[j] : Rational(0);
  }

 private:
  bool finite_upper(int j) const { return j < n_; }

  Rational reduced_cost(int j) const {
    Rational d = cost_[j];
    for (int i = 0; i < p_; ++i) {
      if (tableau_[i][j] != 0) d -= cost_[basis_[i]] * tableau_[i][j];
    }
    return d;
  }

  int choose_entering() const {
    for (int j = 0; j < cols_; ++j) {
      if (in_basis_[j] >= 0) continue;
      if (finite_upper(j) && upper_[j] == 0) continue;  // fixed column
      const Rational d = reduced_cost(j);
      if ((!at_upper_[j] && d > 0) || (at_upper_[j] && d < 0)) return j;
    }
    return -1;
  }

  // Moves the entering column; returns 1 if a basis change happened.
  int step(int entering) {
    const int dir = at_upper_[entering] ? -1 : 1;
    std::optional<Rational> best;
    int leaving_row = -1;
    int leaving_var = std::numeric_limits<int>::max();
    bool leaving_to_upper = false;

    if (finite_upper(entering)) {
      best = upper_[entering];
      leaving_var = entering;  // bound flip candidate
    }
    for (int i = 0; i < p_; ++i) {
      const Rational alpha = tableau_[i][entering] * dir;
      if (alpha == 0) continue;
      const int var = basis_[i];
      Rational limit;
      bool to_upper = false;
      if (alpha > 0) {
        limit = basic_value_[i] / alpha;
      } else {
        if (!finite_upper(var)) continue;
        limit = (upper_[var] - basic_value_[i]) / (-alpha);
        to_upper = true;
      }
      if (!best || limit < *best || (limit == *best && var < leaving_var)) {
        best = limit;
        leaving_row = i;
        leaving_var = var;
        leaving_to_upper = to_upper;
      }
    }
    if (!best) throw std::logic_error("unbounded knapsack LP");
    const Rational theta = *best;

    for (int i = 0; i < p_; ++i) {
      if (tableau_[i][entering] != 0) basic_value_[i] -= tableau_[i][entering] * dir * theta;
    }
    if (leaving_var == entering) {
      at_upper_[entering] = !at_upper_[entering];
      return 0;
    }

    const Rational entering_value =
        at_upper_[entering] ? upper_[entering] - theta : Rational(theta);
    const int old = basis_[leaving_row];
    at_upper_[old] = leaving_to_upper ? 1 : 0;
    in_basis_[old] = -1;

    const Rational pivot = tableau_[leaving_row][entering];
    for (auto& v : tableau_[leaving_row]) v /= pivot;
    for (int i = 0; i < p_; ++i) {
      if (i == leaving_row) continue;
      const Rational factor = tableau_[i][entering];
      if (factor == 0) continue;
      for (int j = 0; j < cols_; ++j) {
        if (tableau_[leaving_row][j] != 0) tableau_[i][j] -= factor * tableau_[leaving_row][j];
      }
    }
    basis_[leaving_row] = entering;
    in_basis_[entering] = leaving_row;
    at_upper_[entering] = 0;
    basic_value_[leaving_row] = entering_value;
    return 1;
  }

  int n_, p_, cols_;
  std::vector<std::vector<Rational>> tableau_;  // B^{-1} [A | I]
  std::vector<Rational> cost_;
  std::vector<Rational> upper_;
  std::vector<Rational> basic_value_;
  std::vector<int> basis_;
  std::vector<std::uint8_t> at_upper_;
  std::vector<int> in_basis_;
};

inline void require_valid(const MkpProblem& prob) {
  const auto v = validate(prob);
  if (!v.empty()) throw InputError("invalid knapsack problem: " + v.front());
}

/// Items that cannot be packed alone (a_ij > budget_i in some row).
inline std::vector<std::uint8_t> oversized_items(const MkpProblem& prob) {
  std::vector<std::uint8_t> out(prob.n(), 0);
  for (int j = 0; j < prob.n(); ++j) {
    for (int i = 0; i < prob.p(); ++i) {
      if (prob.A(i, j) > prob.budgets[i]) out[j] = 1;
    }
  }
  return out;
}

inline BinarySolution evaluate_mkp(const MkpProblem& prob, Assignment x) {
  BinarySolution s;
  s.usage.assign(prob.p(), 0);
  for (int j = 0; j < prob.n(); ++j) {
    if (!x[j]) continue;
    s.linear += prob.b[j];
    for (int i = 0; i < prob.p(); ++i) s.usage[i] += prob.A(i, j);
  }
  s.x = std::move(x);
  return s;
}

}  // namespace detail

/// Optimal basic solution of the LP relaxation. Items that do not fit on
/// their own are held at zero; no integral solution can use them.
inline VertexLpSolution solve_lp_vertex(const MkpProblem& prob) {
  detail::require_valid(prob);
  detail::BoundedSimplex simplex(prob, detail::oversized_items(prob));
  VertexLpSolution sol;
  sol.pivots = simplex.solve();
  sol.x_exact.resize(prob.n());
  sol.x.resize(prob.n());
  for (int j = 0; j < prob.n(); ++j) {
    sol.x_exact[j] = simplex.value_of(j);
    sol.x[j] = static_cast<double>(sol.x_exact[j]);
    sol.value_exact += sol.x_exact[j] * prob.b[j];
    if (sol.x_exact[j] > 0 && sol.x_exact[j] < 1) sol.fractional.push_back(j);
  }
  sol.value = static_cast<double>(sol.value_exact);
  if (static_cast<int>(sol.fractional.size()) > prob.p()) {
    throw std::logic_error("LP solution is not basic");
  }
  return sol;
}

struct MkpRounding {
  VertexLpSolution lp;
  BinarySolution integral_part;  // X_I
  BinarySolution best_fractional;  // X_M
  BinarySolution chosen;
};

/// Both rounding candidates plus the chosen one; `chosen.linear` carries the
/// knapsack benefit.
inline MkpRounding round_p_plus_1_detail(const MkpProblem& prob) {
  MkpRounding r;
  r.lp = solve_lp_vertex(prob);
  Assignment xi(prob.n(), 0);
  for (int j = 0; j < prob.n(); ++j) xi[j] = r.lp.x_exact[j] == 1 ? 1 : 0;
  r.integral_part = detail::evaluate_mkp(prob, std::move(xi));

  Assignment xm(prob.n(), 0);
  int m = -1;
  Rational best_mass = -1;
  for (int j : r.lp.fractional) {
    const Rational mass = r.lp.x_exact[j] * prob.b[j];
    if (mass > best_mass) {
      best_mass = mass;
      m = j;
    }
  }
  if (m >= 0) xm[m] = 1;
  r.best_fractional = detail::evaluate_mkp(prob, std::move(xm));
  r.chosen = r.best_fractional.linear > r.integral_part.linear ? r.best_fractional
                                                                : r.integral_part;
  return r;
}

inline BinarySolution round_p_plus_1(const MkpProblem& prob) {
  return round_p_plus_1_detail(prob).chosen;
}

/// Knapsack over the linear term of an instance, with its original budgets.
inline MkpProblem linear_part(const PiqpInstance& inst) {
  MkpProblem prob;
  prob.b = inst.c;
  prob.A = inst.A;
  prob.budgets = inst.budgets;
  return prob;
}

}  // namespace piqp

#endif  // PIQP_MKP_HPP_

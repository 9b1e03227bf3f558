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

// Problem data model for positive 0-1 quadratic programs
//
//   maximize   sum_{i<j} b_ij x_i x_j + sum_i c_i x_i
//   subject to sum_j a_ij x_j <= W_i,  i = 1..p,   x in {0,1}^n
//
// with B symmetric, zero-diagonal and every coefficient a nonnegative
// integer. Objective values are reported in edge units: every unordered pair
// contributes b_ij once. The symmetric form x^T B x is twice that quantity.

#ifndef PIQP_INSTANCE_HPP_
#define PIQP_INSTANCE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "piqp/matrix.hpp"

namespace piqp {

/// Raised for malformed input data (files, generator parameters, configs).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Assignment = std::vector<std::uint8_t>;

struct PiqpInstance {
  int n = 0;
  int p = 0;
  Matrix<std::int64_t> B;          // n x n, symmetric, zero diagonal
  std::vector<std::int64_t> c;     // n
  Matrix<std::int64_t> A;          // p x n
  std::vector<std::int64_t> budgets;  // p
  nlohmann::json meta = nlohmann::json::object();

  /// Empty instance with the right shapes; all benefits and weights zero.
  static PiqpInstance zeros(int n, int p, std::int64_t budget = 1) {
    PiqpInstance inst;
    inst.n = n;
    inst.p = p;
    inst.B = Matrix<std::int64_t>(n, n, 0);
    inst.c.assign(n, 0);
    inst.A = Matrix<std::int64_t>(p, n, 0);
    inst.budgets.assign(p, budget);
    return inst;
  }

  void set_edge(int u, int v, std::int64_t b) {
    B(u, v) = b;
    B(v, u) = b;
  }

  friend bool operator==(const PiqpInstance& a, const PiqpInstance& b) {
    return a.n == b.n && a.p == b.p && a.B == b.B && a.c == b.c &&
           a.A == b.A && a.budgets == b.budgets && a.meta == b.meta;
  }
};

struct Violation {
  std::string field;
  std::vector<int> index;
  std::string message;
};

inline std::string to_string(const Violation& v) {
  std::string s = v.field;
  if (!v.index.empty()) {
    s += "(";
    for (std::size_t k = 0; k < v.index.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(v.index[k]);
    }
    s += ")";
  }
  return s + ": " + v.message;
}

/// Reports every broken structural invariant. An empty result means the
/// instance is usable by every solver in this library.
inline std::vector<Violation> validate(const PiqpInstance& inst) {
  std::vector<Violation> out;
  auto add = [&](std::string field, std::vector<int> idx, std::string msg) {
    out.push_back({std::move(field), std::move(idx), std::move(msg)});
  };
  if (inst.n < 0) add("n", {}, "must be nonnegative");
  if (inst.p < 1) add("p", {}, "at least one constraint is required");
  const auto n = static_cast<std::size_t>(std::max(inst.n, 0));
  const auto p = static_cast<std::size_t>(std::max(inst.p, 0));
  if (inst.B.rows() != n || inst.B.cols() != n) {
    add("B", {}, "expected an n x n matrix");
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.B(i, i) != 0) {
        add("B", {int(i), int(i)}, "diagonal entries must be zero");
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (inst.B(i, j) < 0) {
          add("B", {int(i), int(j)}, "benefit must be nonnegative");
        }
        if (j > i && inst.B(i, j) != inst.B(j, i)) {
          add("B", {int(i), int(j)}, "asymmetric at (" + std::to_string(i) +
                                         "," + std::to_string(j) + ")");
        }
      }
    }
  }
  if (inst.c.size() != n) {
    add("c", {}, "expected length n");
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.c[i] < 0) add("c", {int(i)}, "linear benefit must be nonnegative");
    }
  }
  if (inst.A.rows() != p || inst.A.cols() != n) {
    add("A", {}, "expected a p x n matrix");
  } else {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (inst.A(i, j) < 0) add("A", {int(i), int(j)}, "weight must be nonnegative");
      }
    }
  }
  if (inst.budgets.size() != p) {
    add("budgets", {}, "expected length p");
  } else {
    for (std::size_t i = 0; i < p; ++i) {
      if (inst.budgets[i] < 1) add("budgets", {int(i)}, "budget must be positive");
    }
  }
  return out;
}

inline int ceil_log2(int n) {
  int k = 0;
  while ((std::int64_t{1} << k) < n) ++k;
  return k;
}

/// Soft warnings: conditions outside the regime the approximation bounds are
/// stated for. They never make an instance invalid.
inline std::vector<std::string> regime_warnings(const PiqpInstance& inst) {
  std::vector<std::string> out;
  if (inst.n > 0 && inst.p > std::max(1, ceil_log2(inst.n))) {
    out.push_back("p = " + std::to_string(inst.p) + " exceeds ceil(log2 n) = " +
                  std::to_string(ceil_log2(inst.n)));
  }
  return out;
}

inline void require_valid(const PiqpInstance& inst) {
  const auto v = validate(inst);
  if (!v.empty()) {
    std::string msg = "invalid instance:";
    for (const auto& e : v) msg += "\n  " + to_string(e);
    throw InputError(msg);
  }
}

// ---------------------------------------------------------------------------
// Solutions

struct BinarySolution {
  Assignment x;
  std::int64_t quadratic = 0;  // sum_{i<j} b_ij x_i x_j
  std::int64_t linear = 0;     // sum_i c_i x_i
  std::vector<std::int64_t> usage;  // G_i(x) = sum_j a_ij x_j

  std::int64_t objective() const { return quadratic + linear; }
  /// x^T B x, i.e. the quadratic part with both orientations of every pair.
  std::int64_t symmetric_quadratic() const { return 2 * quadratic; }
  int count() const {
    return static_cast<int>(std::count(x.begin(), x.end(), std::uint8_t{1}));
  }

  friend bool operator==(const BinarySolution&, const BinarySolution&) = default;
};

/// Computes objective parts and usage of x from scratch.
inline BinarySolution evaluate(const PiqpInstance& inst, Assignment x) {
  if (static_cast<int>(x.size()) != inst.n) {
    throw std::invalid_argument("assignment length does not match n");
  }
  BinarySolution s;
  s.usage.assign(inst.p, 0);
  for (int u = 0; u < inst.n; ++u) {
    if (!x[u]) continue;
    s.linear += inst.c[u];
    const auto row = inst.B.row(u);
    for (int v = u + 1; v < inst.n; ++v) {
      if (x[v]) s.quadratic += row[v];
    }
    for (int i = 0; i < inst.p; ++i) s.usage[i] += inst.A(i, u);
  }
  s.x = std::move(x);
  return s;
}

inline BinarySolution zero_solution(const PiqpInstance& inst) {
  return evaluate(inst, Assignment(inst.n, 0));
}

inline bool feasible(const PiqpInstance& inst, const BinarySolution& s) {
  for (int i = 0; i < inst.p; ++i) {
    if (s.usage[i] > inst.budgets[i]) return false;
  }
  return true;
}

inline bool feasible(const PiqpInstance& inst, const Assignment& x) {
  return feasible(inst, evaluate(inst, x));
}

// ---------------------------------------------------------------------------
// Scaling, pruning and the small/large split

/// Uniform-budget view of an instance. `problem` holds the scaled weights
/// (budgets all equal to W) together with the benefits that survive pruning;
/// `base` is the untouched input. Variables forced to zero are tracked in
/// `fixed` so indices stay aligned with `base`.
struct ScaledInstance {
  PiqpInstance base;
  PiqpInstance problem;
  std::vector<std::uint8_t> fixed;
  std::int64_t W = 0;
  std::int64_t a_max = 0;

  int n() const { return problem.n; }
  int p() const { return problem.p; }
  const Matrix<std::int64_t>& A_hat() const { return problem.A; }
  bool is_free(int j) const { return !fixed[j]; }

  int free_count() const {
    return static_cast<int>(std::count(fixed.begin(), fixed.end(), std::uint8_t{0}));
  }

  /// Largest scaled weight among variables that are not fixed to zero.
  std::int64_t active_a_max() const {
    std::int64_t m = 0;
    for (int i = 0; i < p(); ++i) {
      for (int j = 0; j < n(); ++j) {
        if (!fixed[j]) m = std::max(m, problem.A(i, j));
      }
    }
    return m;
  }
};

/// ceil(a * W / Wi) in exact integer arithmetic.
inline std::int64_t scaled_weight(std::int64_t a, std::int64_t W, std::int64_t Wi) {
  const __int128 num = static_cast<__int128>(a) * W;
  return static_cast<std::int64_t>((num + Wi - 1) / Wi);
}

inline ScaledInstance scale(const PiqpInstance& inst) {
  require_valid(inst);
  ScaledInstance s;
  s.base = inst;
  s.problem = inst;
  s.W = *std::max_element(inst.budgets.begin(), inst.budgets.end());
  for (int i = 0; i < inst.p; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      s.problem.A(i, j) = scaled_weight(inst.A(i, j), s.W, inst.budgets[i]);
    }
    s.problem.budgets[i] = s.W;
  }
  s.fixed.assign(inst.n, 0);
  s.a_max = s.problem.A.max_element();
  return s;
}

namespace detail {

inline void force_zero(ScaledInstance& s, int j, bool zero_column) {
  s.fixed[j] = 1;
  s.problem.c[j] = 0;
  for (int k = 0; k < s.n(); ++k) s.problem.set_edge(j, k, 0);
  if (zero_column) {
    for (int i = 0; i < s.p(); ++i) s.problem.A(i, j) = 0;
  }
}

}  // namespace detail

/// Removes benefits that no feasible solution can collect: pairs whose
/// combined scaled weight exceeds W in some constraint, and single variables
/// that do not fit on their own.
inline ScaledInstance prune_infeasible_pairs(ScaledInstance s) {
  const int n = s.n();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < s.p(); ++i) {
      if (s.problem.A(i, j) > s.W) {
        detail::force_zero(s, j, /*zero_column=*/true);
        break;
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      if (s.problem.B(j, k) == 0) continue;
      for (int i = 0; i < s.p(); ++i) {
        if (s.problem.A(i, j) + s.problem.A(i, k) > s.W) {
          s.problem.set_edge(j, k, 0);
          break;
        }
      }
    }
  }
  s.a_max = s.problem.A.max_element();
  return s;
}

/// Variables with a scaled weight above W/2 in some constraint.
inline std::vector<std::uint8_t> heavy_variables(const ScaledInstance& s) {
  std::vector<std::uint8_t> heavy(s.n(), 0);
  for (int j = 0; j < s.n(); ++j) {
    for (int i = 0; i < s.p(); ++i) {
      if (2 * s.problem.A(i, j) > s.W) {
        heavy[j] = 1;
        break;
      }
    }
  }
  return heavy;
}

/// Returns (small, large): the first keeps only light variables (all scaled
/// weights <= W/2), the second only heavy ones.
inline std::pair<ScaledInstance, ScaledInstance> split_piqps_piqpr(
    const ScaledInstance& s) {
  const auto heavy = heavy_variables(s);
  ScaledInstance small = s;
  ScaledInstance large = s;
  for (int j = 0; j < s.n(); ++j) {
    if (heavy[j]) {
      detail::force_zero(small, j, /*zero_column=*/false);
    } else {
      detail::force_zero(large, j, /*zero_column=*/false);
    }
  }
  return {std::move(small), std::move(large)};
}

// ---------------------------------------------------------------------------
// Graph view

/// Adjacency over the support of B plus the combined vertex weights
/// w_v = sum_i a_iv.
struct GraphView {
  struct Neighbor {
    int vertex;
    std::int64_t benefit;
  };
  std::vector<std::vector<Neighbor>> adjacency;
  std::vector<std::int64_t> weight;

  int n() const { return static_cast<int>(adjacency.size()); }
};

inline GraphView make_graph_view(const PiqpInstance& inst) {
  GraphView g;
  g.adjacency.resize(inst.n);
  g.weight.assign(inst.n, 0);
  for (int u = 0; u < inst.n; ++u) {
    for (int v = 0; v < inst.n; ++v) {
      if (u != v && inst.B(u, v) > 0) g.adjacency[u].push_back({v, inst.B(u, v)});
    }
    for (int i = 0; i < inst.p; ++i) g.weight[u] += inst.A(i, u);
  }
  return g;
}

inline bool has_quadratic_benefit(const PiqpInstance& inst) {
  for (int u = 0; u < inst.n; ++u) {
    for (int v = u + 1; v < inst.n; ++v) {
      if (inst.B(u, v) > 0) return true;
    }
  }
  return false;
}

}  // namespace piqp

#endif  // PIQP_INSTANCE_HPP_

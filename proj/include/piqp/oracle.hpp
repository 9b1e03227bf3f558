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

// Exhaustive ground-truth solvers. Assignments are visited in reflected Gray
// code order so each step flips one variable and objective/usage are updated
// in O(n + p).

#ifndef PIQP_ORACLE_HPP_
#define PIQP_ORACLE_HPP_

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "piqp/instance.hpp"

namespace piqp {

inline constexpr int kDefaultOracleLimit = 24;

struct OracleResult {
  std::int64_t optimum = 0;
  BinarySolution argmax;
  std::uint64_t count_explored = 0;
};

namespace detail {

// True if a is lexicographically smaller than b (x_0 compared first).
inline bool lex_less(const Assignment& a, const Assignment& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return false;
}

// Enumeration core; budgets may be zero here.
inline OracleResult enumerate(const PiqpInstance& inst, std::span<const std::uint8_t> fixed,
                              int limit_n) {
  std::vector<int> vars;
  for (int j = 0; j < inst.n; ++j) {
    if (fixed.empty() || !fixed[j]) vars.push_back(j);
  }
  if (inst.n > limit_n) {
    throw std::invalid_argument("brute force refused: n = " + std::to_string(inst.n) +
                                " exceeds limit " + std::to_string(limit_n));
  }
  const int m = static_cast<int>(vars.size());

  Assignment x(inst.n, 0);
  std::vector<std::int64_t> usage(inst.p, 0);
  std::int64_t value = 0;

  OracleResult best;
  best.optimum = 0;
  best.argmax = zero_solution(inst);  // x = 0 is always feasible
  best.count_explored = 1;

  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int bit = std::countr_zero(step);
    const int j = vars[bit];
    const auto row = inst.B.row(j);
    std::int64_t delta = inst.c[j];
    for (int u = 0; u < inst.n; ++u) {
      if (x[u]) delta += row[u];
    }
    if (x[j]) {
      x[j] = 0;
      value -= delta;
      for (int i = 0; i < inst.p; ++i) usage[i] -= inst.A(i, j);
    } else {
      x[j] = 1;
      value += delta;
      for (int i = 0; i < inst.p; ++i) usage[i] += inst.A(i, j);
    }
    ++best.count_explored;
    if (value < best.optimum) continue;
    bool ok = true;
    for (int i = 0; i < inst.p; ++i) {
      if (usage[i] > inst.budgets[i]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (value > best.optimum || detail::lex_less(x, best.argmax.x)) {
      best.optimum = value;
      best.argmax.x = x;
    }
  }
  best.argmax = evaluate(inst, best.argmax.x);
  return best;
}

}  // namespace detail

/// Exact maximum of the full objective over feasible 0-1 points. Variables
/// with fixed[j] != 0 are held at zero. Ties go to the lexicographically
/// smallest optimal assignment.
inline OracleResult brute_force(const PiqpInstance& inst,
                                std::span<const std::uint8_t> fixed,
                                int limit_n = kDefaultOracleLimit) {
  require_valid(inst);
  return detail::enumerate(inst, fixed, limit_n);
}

inline OracleResult brute_force(const PiqpInstance& inst,
                                int limit_n = kDefaultOracleLimit) {
  return brute_force(inst, std::span<const std::uint8_t>{}, limit_n);
}

/// Oracle on the scaled problem, respecting fixed variables.
inline OracleResult brute_force(const ScaledInstance& s,
                                int limit_n = kDefaultOracleLimit) {
  return brute_force(s.problem, s.fixed, limit_n);
}

/// Exact optimum of the linear multi-constraint 0-1 knapsack
/// max b.x s.t. A x <= budgets.
inline OracleResult brute_force_mkp(std::span<const std::int64_t> b,
                                    const Matrix<std::int64_t>& A,
                                    std::span<const std::int64_t> budgets,
                                    int limit_n = kDefaultOracleLimit) {
  const int n = static_cast<int>(b.size());
  const int p = static_cast<int>(budgets.size());
  if (A.rows() != budgets.size() || A.cols() != b.size()) {
    throw std::invalid_argument("knapsack dimensions do not match");
  }
  PiqpInstance inst = PiqpInstance::zeros(n, p);
  inst.c.assign(b.begin(), b.end());
  inst.A = A;
  inst.budgets.assign(budgets.begin(), budgets.end());
  for (auto w : inst.budgets) {
    if (w < 0) throw std::invalid_argument("negative knapsack budget");
  }
  return detail::enumerate(inst, {}, limit_n);
}

}  // namespace piqp

#endif  // PIQP_ORACLE_HPP_

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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "piqp/generate.hpp"
#include "piqp/oracle.hpp"
#include "piqp/relaxation.hpp"
#include "test_support.hpp"

namespace piqp {
namespace {

// Not pruned: with budget 1 pruning would remove the only edge.
ScaledInstance single_edge(std::int64_t budget) {
  auto inst = PiqpInstance::zeros(2, 1, budget);
  inst.set_edge(0, 1, 1);
  inst.A(0, 0) = inst.A(0, 1) = 1;
  return scale(inst);
}

double hyperbolic(const ScaledInstance& s, const std::vector<double>& x) {
  double v = 0.0;
  for (int u = 0; u < s.n(); ++u) {
    for (int w = u + 1; w < s.n(); ++w) v += s.problem.B(u, w) * std::sqrt(x[u] * x[w]);
  }
  return v;
}

bool exactly_feasible(const ScaledInstance& s, const std::vector<double>& x) {
  for (int i = 0; i < s.p(); ++i) {
    double use = 0.0;
    for (int j = 0; j < s.n(); ++j) use += s.problem.A(i, j) * x[j];
    if (use > static_cast<double>(s.W)) return false;
  }
  for (double v : x) {
    if (v < 0.0 || v > 1.0) return false;
  }
  return true;
}

TEST(Relaxation, SingleEdgeLooseBudget) {
  const auto rs = solve_relaxation(single_edge(2), {});
  EXPECT_NEAR(rs.x_star[0], 1.0, 1e-9);
  EXPECT_NEAR(rs.x_star[1], 1.0, 1e-9);
  EXPECT_NEAR(rs.value, 1.0, 1e-9);
  EXPECT_TRUE(rs.converged);
}

TEST(Relaxation, SingleEdgeUnitBudgetMatchesGrid) {
  const auto s = single_edge(1);
  // Independent check: grid search over x_0 on the binding face x_0 + x_1 = 1.
  double grid = 0.0;
  for (int k = 0; k <= 10000; ++k) {
    const double x = k * 1e-4;
    grid = std::max(grid, std::sqrt(x * (1.0 - x)));
  }
  const auto rs = solve_relaxation(s, {});
  EXPECT_NEAR(grid, 0.5, 1e-12);
  EXPECT_NEAR(rs.value, grid, 1e-4);
  EXPECT_NEAR(rs.x_star[0], 0.5, 1e-2);
  EXPECT_TRUE(exactly_feasible(s, rs.x_star));
}

TEST(Relaxation, TriangleFits) {
  const auto inst = generate_clique(make_graph("k3", 0, 0, 0), 3);
  const auto rs = solve_relaxation(prune_infeasible_pairs(scale(inst)), {});
  EXPECT_NEAR(rs.value, 3.0, 1e-9);
  ASSERT_EQ(rs.edge_vals.size(), 3u);
}

TEST(Relaxation, UpperBoundsIntegralOptimum) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto s = prune_infeasible_pairs(
        scale(testing::random_instance(3 + seed % 10, 1 + seed % 3, 2000 + seed)));
    const auto rs = solve_relaxation(s, {});
    const auto opt = brute_force(s).optimum;
    EXPECT_GE(rs.value, static_cast<double>(opt) - 1e-9) << "seed " << seed;
  }
}

TEST(Relaxation, Invariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = prune_infeasible_pairs(
        scale(testing::random_instance(5 + seed % 20, 1 + seed % 3, 3000 + seed)));
    const auto rs = solve_relaxation(s, {});
    EXPECT_TRUE(exactly_feasible(s, rs.x_star));
    EXPECT_LE(rs.residual, 0.0);
    for (int j = 0; j < s.n(); ++j) {
      if (s.fixed[j]) {
        EXPECT_EQ(rs.x_star[j], 0.0);
      }
    }
    for (const auto& e : rs.edge_vals) {
      EXPECT_GE(rs.x_star[e.u] * rs.x_star[e.v] - e.value * e.value, -1e-12);
    }
    EXPECT_NEAR(rs.value, hyperbolic(s, rs.x_star), 1e-9 * (1.0 + rs.value));
    for (std::size_t k = 1; k < rs.history.size(); ++k) {
      EXPECT_GE(rs.history[k], rs.history[k - 1]);
    }
  }
}

TEST(Relaxation, BeatsRandomFeasiblePoints) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = prune_infeasible_pairs(scale(testing::random_instance(8, 2, 4000 + seed)));
    const auto rs = solve_relaxation(s, {});
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<double> x(s.n());
      for (int j = 0; j < s.n(); ++j) x[j] = s.fixed[j] ? 0.0 : unif(rng);
      double ratio = 1.0;
      for (int i = 0; i < s.p(); ++i) {
        double use = 0.0;
        for (int j = 0; j < s.n(); ++j) use += s.problem.A(i, j) * x[j];
        ratio = std::max(ratio, use / static_cast<double>(s.W));
      }
      for (auto& v : x) v /= ratio;
      EXPECT_GE(rs.value, hyperbolic(s, x) * (1.0 - 1e-6));
    }
  }
}

TEST(Relaxation, HomogeneousInBenefits) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = testing::random_instance(10, 2, 5000 + seed);
    const auto a = solve_relaxation(prune_infeasible_pairs(scale(inst)), {});
    for (int u = 0; u < inst.n; ++u) {
      for (int v = 0; v < inst.n; ++v) inst.B(u, v) *= 2;
    }
    const auto b = solve_relaxation(prune_infeasible_pairs(scale(inst)), {});
    EXPECT_NEAR(b.value, 2.0 * a.value, 1e-7 * (1.0 + b.value));
    for (int j = 0; j < inst.n; ++j) EXPECT_NEAR(a.x_star[j], b.x_star[j], 1e-7);
  }
}

TEST(Relaxation, EmptyBenefitAndConfigChecks) {
  const auto s = prune_infeasible_pairs(scale(PiqpInstance::zeros(4, 1, 3)));
  EXPECT_EQ(solve_relaxation(s, {}).value, 0.0);
  SolverConfig bad;
  bad.rel_tol = 0.0;
  EXPECT_THROW(solve_relaxation(s, bad), std::invalid_argument);
  bad = {};
  bad.smoothing_eps = -1.0;
  EXPECT_THROW(solve_relaxation(s, bad), std::invalid_argument);
}

TEST(Relaxation, IterationCapReportsNonConvergence) {
  const auto s = prune_infeasible_pairs(scale(testing::random_instance(20, 2, 77)));
  SolverConfig cfg;
  cfg.max_iterations = 1;
  const auto rs = solve_relaxation(s, cfg);
  EXPECT_FALSE(rs.converged);
  EXPECT_TRUE(exactly_feasible(s, rs.x_star));
}

TEST(SqrtBudgetBound, ZeroPoint) {
  const auto s = single_edge(4);
  RelaxationSolution rs;
  rs.x_star = {0.0, 0.0};
  const auto slack = check_sqrt_budget_bound(rs, s, 4.0);
  EXPECT_NEAR(slack[0], 2.0 * 4.0 * std::sqrt(1.0 * 2 / 4.0), 1e-12);
}

TEST(SqrtBudgetBound, AllOnesUnitWeights) {
  const int n = 9;
  auto inst = PiqpInstance::zeros(n, 1, n);
  for (int j = 0; j < n; ++j) inst.A(0, j) = 1;
  const auto s = scale(inst);
  RelaxationSolution rs;
  rs.x_star.assign(n, 1.0);
  // n <= 2 W sqrt(n / W) = 2n.
  EXPECT_NEAR(check_sqrt_budget_bound(rs, s, n)[0], n, 1e-9);
}

TEST(SqrtBudgetBound, RandomFeasiblePoints) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto s = prune_infeasible_pairs(
        scale(testing::random_instance(2 + seed % 49, 1 + seed % 3, 6000 + seed)));
    RelaxationSolution rs;
    rs.x_star.resize(s.n());
    for (int j = 0; j < s.n(); ++j) rs.x_star[j] = s.fixed[j] ? 0.0 : unif(rng);
    detail::shrink_to_feasible(s, rs.x_star);
    const double a_max = static_cast<double>(std::max<std::int64_t>(1, s.active_a_max()));
    for (double beta : {a_max, 0.5 * (a_max + s.W), static_cast<double>(s.W)}) {
      if (beta > s.W) continue;
      EXPECT_NO_THROW(check_sqrt_budget_bound(rs, s, beta));
    }
  }
}

TEST(SqrtBudgetBound, RejectsBetaOutsideRange) {
  const auto s = single_edge(4);
  RelaxationSolution rs;
  rs.x_star = {0.0, 0.0};
  EXPECT_THROW(check_sqrt_budget_bound(rs, s, 5.0), std::invalid_argument);
  EXPECT_THROW(check_sqrt_budget_bound(rs, s, 0.5), std::invalid_argument);
}

}  // namespace
}  // namespace piqp

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
#include "piqp/relaxation.hpp"
#include "piqp/rounding.hpp"
#include "test_support.hpp"

namespace piqp {
namespace {

ScaledInstance unit_weights(int n, std::int64_t W) {
  auto inst = PiqpInstance::zeros(n, 1, W);
  for (int j = 0; j < n; ++j) inst.A(0, j) = 1;
  return scale(inst);
}

RelaxationSolution point(std::vector<double> x) {
  RelaxationSolution rs;
  rs.x_star = std::move(x);
  return rs;
}

TEST(Lambda, Examples) {
  EXPECT_DOUBLE_EQ(compute_lambda(unit_weights(16, 4), 4.0), 4.0);
  EXPECT_DOUBLE_EQ(compute_lambda(unit_weights(4, 4), 4.0), 2.0);
  EXPECT_DOUBLE_EQ(compute_lambda(unit_weights(1, 1), 1.0), 2.0);
  EXPECT_DOUBLE_EQ(compute_lambda(unit_weights(1, 100), 100.0), 1.0);  // clamped
  EXPECT_THROW(compute_lambda(unit_weights(2, 2), 0.0), std::invalid_argument);
}

TEST(DefaultTrials, PowerOfN) {
  EXPECT_EQ(default_trials(1, 0.1), 1);
  EXPECT_EQ(default_trials(16, 0.1), static_cast<int>(std::ceil(std::pow(16.0, 0.6))));
  EXPECT_EQ(default_trials(100, 0.0), 10);
}

TEST(RoundOnce, SingleEdgeExpectation) {
  auto s = unit_weights(2, 2);
  s.problem.set_edge(0, 1, 8);
  const auto rs = point({1.0, 1.0});
  std::mt19937_64 rng(5);
  const int trials = 100000;
  double sum = 0.0;
  for (int k = 0; k < trials; ++k) sum += round_once(s, rs, 2.0, rng).objective();
  // F is 8 with probability 1/4.
  const double mean = sum / trials, sd = std::sqrt(64.0 * 0.25 * 0.75 / trials);
  EXPECT_NEAR(mean, 2.0, 3.0 * sd);
}

TEST(RoundOnce, ZeroPointGivesZero) {
  auto s = unit_weights(5, 3);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    EXPECT_EQ(round_once(s, point(std::vector<double>(5, 0.0)), 1.5, rng).count(), 0);
  }
  EXPECT_THROW(round_once(s, point(std::vector<double>(5, 0.0)), 0.5, rng),
               std::invalid_argument);
}

TEST(RoundOnce, MeanUsageWithinBudget) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto s = prune_infeasible_pairs(scale(testing::random_instance(12, 2, 40 + seed)));
    const auto rs = solve_relaxation(s, {});
    const double lambda = compute_lambda(s, static_cast<double>(s.W));
    std::mt19937_64 rng(seed);
    const int trials = 100000;
    std::vector<double> sum(s.p()), sq(s.p());
    for (int k = 0; k < trials; ++k) {
      const auto y = round_once(s, rs, lambda, rng);
      for (int i = 0; i < s.p(); ++i) {
        sum[i] += y.usage[i];
        sq[i] += static_cast<double>(y.usage[i]) * y.usage[i];
      }
    }
    for (int i = 0; i < s.p(); ++i) {
      const double mean = sum[i] / trials;
      const double se = std::sqrt(std::max(0.0, sq[i] / trials - mean * mean) / trials);
      EXPECT_LE(mean, static_cast<double>(s.W) + 3.0 * se);
    }
  }
}

TEST(BestEdge, UniqueMaximumAndTies) {
  auto s = unit_weights(4, 4);
  s.problem.set_edge(1, 2, 5);
  s.problem.set_edge(0, 3, 2);
  auto sol = best_edge_solution(s);
  EXPECT_EQ(sol.x, (Assignment{0, 1, 1, 0}));
  EXPECT_EQ(sol.quadratic, 5);
  EXPECT_EQ(sol.symmetric_quadratic(), 10);
  s.problem.set_edge(0, 3, 5);
  EXPECT_EQ(best_edge_solution(s).x, (Assignment{1, 0, 0, 1}));
}

TEST(BestEdge, NoBenefit) {
  EXPECT_EQ(best_edge_solution(unit_weights(3, 1)).x, Assignment(3, 0));
}

TEST(LocalKnapsack, StarWithLooseBudget) {
  auto inst = generate_dsp(make_graph("star6", 0, 0, 0), 6);
  for (int u = 1; u < 6; ++u) inst.set_edge(0, u, u);
  const auto s = prune_infeasible_pairs(scale(inst));
  const auto rs = solve_relaxation(s, {});
  const auto lk = local_knapsack_detail(s, rs, compute_lambda(s, s.W));
  EXPECT_EQ(lk.center, 0);
  EXPECT_EQ(lk.solution.x, Assignment(6, 1));
  EXPECT_EQ(lk.solution.objective(), 15);
}

TEST(LocalKnapsack, SingleEdge) {
  auto s = unit_weights(3, 2);
  s.problem.set_edge(1, 2, 4);
  const auto rs = solve_relaxation(s, {});
  const auto sol = local_knapsack_solution(s, rs, 1.0);
  EXPECT_EQ(sol.x, (Assignment{0, 1, 1}));
  EXPECT_EQ(local_knapsack_solution(unit_weights(3, 2), rs, 1.0).objective(), 0);
}

TEST(LocalKnapsack, WithinFactorOfNeighbourhoodLp) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int p = 1 + seed % 2;
    const auto s = split_piqps_piqpr(
                       prune_infeasible_pairs(scale(testing::random_instance(12, p, 80 + seed))))
                       .first;
    if (s.free_count() == 0) continue;
    const auto rs = solve_relaxation(s, {});
    const auto lk = local_knapsack_detail(s, rs, compute_lambda(s, s.W));
    EXPECT_TRUE(feasible(s.problem, lk.solution));
    if (lk.center < 0) continue;
    const double lp = solve_lp_vertex(lk.problem).value;
    EXPECT_GE(2.0 * (p + 1) * lk.solution.objective(), lp - 1e-9) << "seed " << seed;
  }
}

TEST(Repair, FeasibleInputUnchanged) {
  auto s = unit_weights(4, 3);
  s.problem.set_edge(0, 1, 3);
  const auto y = evaluate(s.problem, Assignment{1, 1, 0, 0});
  EXPECT_EQ(repair_infeasible(y, s).x, y.x);
}

TEST(Repair, DropsExactlyTheOvershoot) {
  const int n = 9;
  for (std::int64_t W = 1; W <= n; ++W) {
    auto s = unit_weights(n, W);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) s.problem.set_edge(u, v, 1 + (u * v) % 3);
    }
    const auto y = evaluate(s.problem, Assignment(n, 1));
    const auto r = repair_infeasible(y, s);
    EXPECT_TRUE(feasible(s.problem, r));
    EXPECT_EQ(r.count(), W);
    EXPECT_LE(r.objective(), y.objective());
    EXPECT_GE(r.objective(), 0);
  }
}

TEST(Repair, RandomPointsBecomeFeasible) {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto s = prune_infeasible_pairs(scale(testing::random_instance(10, 3, seed)));
    Assignment x(s.n());
    for (auto& b : x) b = rng() & 1;
    const auto y = evaluate(s.problem, x);
    const auto r = repair_infeasible(y, s);
    EXPECT_TRUE(feasible(s.problem, r));
    EXPECT_LE(r.objective(), y.objective());
    for (int j = 0; j < s.n(); ++j) EXPECT_LE(r.x[j], x[j]);
  }
}

TEST(Trials, DeterministicAndAggregatesConsistent) {
  const auto s = prune_infeasible_pairs(scale(testing::random_instance(14, 2, 9)));
  const auto rs = solve_relaxation(s, {});
  RoundingConfig cfg;
  cfg.seed = 123;
  const double lambda = compute_lambda(s, s.W);
  const auto a = randomized_rounding(s, rs, lambda, 50, cfg, 0);
  const auto b = randomized_rounding(s, rs, lambda, 50, cfg, 0);
  EXPECT_EQ(a.best.x, b.best.x);
  ASSERT_EQ(a.stats.trials.size(), 50u);
  double mean = 0.0;
  int feas = 0;
  for (const auto& t : a.stats.trials) {
    mean += t.objective;
    feas += t.feasible;
  }
  EXPECT_DOUBLE_EQ(a.stats.mean_objective, mean / 50);
  EXPECT_DOUBLE_EQ(a.stats.feasibility_rate, feas / 50.0);
  EXPECT_TRUE(feasible(s.base, a.best));

  cfg.repair = false;
  const auto d = randomized_rounding(s, rs, lambda, 50, cfg, 0);
  EXPECT_TRUE(feasible(s.base, d.best));
  EXPECT_LE(d.best.objective(), a.best.objective());
}

TEST(Diagnostics, SingleEdge) {
  auto s = unit_weights(2, 1);
  s.problem.set_edge(0, 1, 6);
  const auto rs = solve_relaxation(s, {});
  const double lambda = compute_lambda(s, 1.0);
  const auto d = concentration_diagnostics(rs, s, lambda);
  EXPECT_DOUBLE_EQ(d.eps2, 6.0);
  EXPECT_LE(d.eps1, d.eps2);
  EXPECT_NEAR(d.eps1, 6.0 * std::sqrt(std::max(rs.x_star[0], rs.x_star[1])) / lambda, 1e-12);
  EXPECT_NEAR(d.eps0, rs.value / (lambda * lambda), 1e-12);
}

TEST(Diagnostics, Degenerate) {
  const auto s = unit_weights(5, 2);
  const auto d = concentration_diagnostics(solve_relaxation(s, {}), s, 2.0);
  EXPECT_EQ(d.label, "degenerate");
  EXPECT_EQ(d.eps0, 0.0);
  EXPECT_EQ(d.eps1, 0.0);
  EXPECT_EQ(d.eps2, 0.0);
}

TEST(Diagnostics, DenseSubgraphLabelStable) {
  GenerateParams prm;
  prm.kind = InstanceKind::kDsp;
  prm.qkp.n = 64;
  prm.qkp.density = 0.2;
  prm.k = 8;
  const auto s = prune_infeasible_pairs(scale(generate(prm, 3)));
  const double lambda = compute_lambda(s, s.W);
  std::string first;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    SolverConfig cfg;
    cfg.seed = seed;
    const auto d = concentration_diagnostics(solve_relaxation(s, cfg), s, lambda);
    if (seed == 0) first = d.label;
    EXPECT_EQ(d.label, first);
  }
  EXPECT_NE(first, "degenerate");
}

}  // namespace
}  // namespace piqp

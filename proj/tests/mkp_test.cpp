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

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "piqp/mkp.hpp"
#include "piqp/oracle.hpp"

namespace piqp {
namespace {

MkpProblem two_items() {
  MkpProblem prob;
  prob.b = {10, 6};
  prob.A = Matrix<std::int64_t>(1, 2);
  prob.A(0, 0) = 5;
  prob.A(0, 1) = 4;
  prob.budgets = {8};
  return prob;
}

MkpProblem random_mkp(int n, int p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> w(0, 9), b(0, 20);
  MkpProblem prob;
  prob.b.resize(n);
  prob.A = Matrix<std::int64_t>(p, n);
  prob.budgets.resize(p);
  for (auto& v : prob.b) v = b(rng);
  for (int i = 0; i < p; ++i) {
    std::int64_t sum = 0;
    for (int j = 0; j < n; ++j) sum += prob.A(i, j) = w(rng);
    prob.budgets[i] = std::uniform_int_distribution<std::int64_t>(0, sum)(rng);
  }
  return prob;
}

// Fractional single-constraint knapsack by density order.
Rational dantzig(const MkpProblem& prob) {
  std::vector<int> order;
  for (int j = 0; j < prob.n(); ++j) {
    if (prob.b[j] > 0 && prob.A(0, j) <= prob.budgets[0]) order.push_back(j);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    // Zero weights first, then by b/a descending.
    return Rational(prob.b[a]) * prob.A(0, b) > Rational(prob.b[b]) * prob.A(0, a);
  });
  Rational room = prob.budgets[0], value = 0;
  for (int j : order) {
    const Rational a = prob.A(0, j);
    if (a <= room) {
      room -= a;
      value += prob.b[j];
    } else {
      value += Rational(prob.b[j]) * room / a;
      break;
    }
  }
  return value;
}

TEST(LpVertex, TwoItemExample) {
  const auto lp = solve_lp_vertex(two_items());
  EXPECT_EQ(lp.x_exact[0], Rational(1));
  EXPECT_EQ(lp.x_exact[1], Rational(3, 4));
  EXPECT_EQ(lp.value_exact, Rational(29, 2));
  EXPECT_DOUBLE_EQ(lp.value, 14.5);
  EXPECT_EQ(lp.fractional, std::vector<int>{1});
}

TEST(LpVertex, EverythingFits) {
  auto prob = two_items();
  prob.budgets = {9};
  const auto lp = solve_lp_vertex(prob);
  EXPECT_EQ(lp.x, (std::vector<double>{1.0, 1.0}));
  EXPECT_TRUE(lp.fractional.empty());
}

TEST(LpVertex, ZeroBenefit) {
  auto prob = two_items();
  prob.b = {0, 0};
  EXPECT_EQ(solve_lp_vertex(prob).value_exact, Rational(0));
}

TEST(LpVertex, OversizedItemHeldAtZero) {
  auto prob = two_items();
  prob.A(0, 0) = 9;
  const auto lp = solve_lp_vertex(prob);
  EXPECT_EQ(lp.x_exact[0], Rational(0));
  EXPECT_EQ(lp.x_exact[1], Rational(1));
}

TEST(LpVertex, RejectsInvalidProblems) {
  auto prob = two_items();
  prob.b[0] = -1;
  EXPECT_THROW(solve_lp_vertex(prob), InputError);
  prob = two_items();
  prob.budgets = {8, 8};
  EXPECT_THROW(solve_lp_vertex(prob), InputError);
}

TEST(LpVertex, DegenerateTies) {
  // Identical items: many optimal bases, Bland's rule must still terminate.
  MkpProblem prob;
  prob.b.assign(12, 3);
  prob.A = Matrix<std::int64_t>(3, 12, 2);
  prob.budgets = {7, 7, 7};
  const auto lp = solve_lp_vertex(prob);
  EXPECT_EQ(lp.value_exact, Rational(21, 2));
  EXPECT_LE(lp.fractional.size(), 3u);
}

TEST(LpVertex, MatchesDensityOrderForOneConstraint) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 200; ++k) {
    const auto prob = random_mkp(1 + k % 16, 1, rng);
    EXPECT_EQ(solve_lp_vertex(prob).value_exact, dantzig(prob)) << "case " << k;
  }
}

TEST(Rounding, TwoItemExample) {
  const auto r = round_p_plus_1_detail(two_items());
  EXPECT_EQ(r.integral_part.x, (Assignment{1, 0}));
  EXPECT_EQ(r.integral_part.linear, 10);
  EXPECT_EQ(r.best_fractional.x, (Assignment{0, 1}));
  EXPECT_EQ(r.best_fractional.linear, 6);
  EXPECT_EQ(r.chosen.linear, 10);
  EXPECT_GE(2 * r.chosen.linear, 14.5);
}

TEST(Rounding, IntegralVertexIsReturned) {
  auto prob = two_items();
  prob.budgets = {9};
  const auto r = round_p_plus_1(prob);
  EXPECT_EQ(r.x, (Assignment{1, 1}));
  EXPECT_EQ(r.linear, 16);
}

TEST(Rounding, GuaranteeAgainstBruteForce) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 300; ++k) {
    const int n = 1 + k % 16, p = 1 + k % 3;
    const auto prob = random_mkp(n, p, rng);
    const auto r = round_p_plus_1_detail(prob);
    const auto opt = brute_force_mkp(prob.b, prob.A, prob.budgets).optimum;
    EXPECT_LE(static_cast<int>(r.lp.fractional.size()), p);
    EXPECT_GE(r.lp.value_exact, Rational(opt));
    EXPECT_GE((p + 1) * r.chosen.linear, opt) << "case " << k;
    for (int i = 0; i < p; ++i) {
      Rational use = 0;
      for (int j = 0; j < n; ++j) use += r.lp.x_exact[j] * prob.A(i, j);
      EXPECT_LE(use, Rational(prob.budgets[i]));
      EXPECT_LE(r.chosen.usage[i], prob.budgets[i]);
    }
  }
}

TEST(Rounding, LinearPartOfInstance) {
  auto inst = PiqpInstance::zeros(2, 1, 8);
  inst.c = {10, 6};
  inst.A(0, 0) = 5;
  inst.A(0, 1) = 4;
  EXPECT_EQ(round_p_plus_1(linear_part(inst)).linear, 10);
}

}  // namespace
}  // namespace piqp

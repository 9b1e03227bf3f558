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

// Greedy subset selection on the graph view of a scaled instance.
//
// Each round picks, among all subsets T of unselected vertices with
// 1 <= |T| <= t + 1 that fit every budget on their own, the one maximizing
//
//   (b(G[S u T]) - b(G[S])) / w(T),      w(T) = sum_{v in T} sum_i a_iv
//
// and adds it while S u T stays feasible. With parameter t the result is
// within 8 p min(n, W) / t of the optimum. All ratio comparisons are exact.

#ifndef PIQP_GREEDY_HPP_
#define PIQP_GREEDY_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "piqp/instance.hpp"

namespace piqp {

enum class TieBreak {
  kLexicographic,  // smallest vertex index tuple wins
};

struct GreedyConfig {
  /// Approximation parameter; candidate subsets have up to t + 1 vertices.
  int t = 1;
  TieBreak tie_break = TieBreak::kLexicographic;

  int subset_cap(int n) const { return std::max(1, std::min(t + 1, n)); }
};

/// Benefit-to-weight ratio kept as an exact fraction. A zero weight with
/// positive benefit is +infinity; 0/0 compares equal to zero.
struct Ratio {
  std::int64_t benefit = 0;
  std::int64_t weight = 0;

  bool infinite() const { return weight == 0 && benefit > 0; }

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    if (a.infinite() || b.infinite()) {
      if (a.infinite() != b.infinite()) {
        return a.infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
      }
      return a.benefit <=> b.benefit;
    }
    const __int128 lhs = static_cast<__int128>(a.benefit) * (b.weight == 0 ? 1 : b.weight);
    const __int128 rhs = static_cast<__int128>(b.benefit) * (a.weight == 0 ? 1 : a.weight);
    // 0/0 behaves as 0: its benefit is zero, so the products above are exact.
    if (a.weight == 0 && a.benefit == 0) return __int128{0} <=> rhs;
    if (b.weight == 0 && b.benefit == 0) return lhs <=> __int128{0};
    return lhs <=> rhs;
  }
  friend bool operator==(const Ratio& a, const Ratio& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  double to_double() const {
    if (infinite()) return std::numeric_limits<double>::infinity();
    if (weight == 0) return 0.0;
    return static_cast<double>(benefit) / static_cast<double>(weight);
  }
};

/// Marginal benefit of adding T to S, divided by the combined weight of T.
inline Ratio marginal_ratio(std::span<const int> S, std::span<const int> T,
                            const GraphView& view) {
  std::vector<std::uint8_t> in_s(view.n(), 0), in_t(view.n(), 0);
  for (int v : S) in_s[v] = 1;
  for (int v : T) {
    if (in_s[v]) throw std::invalid_argument("T must be disjoint from S");
    in_t[v] = 1;
  }
  Ratio r;
  for (int v : T) {
    r.weight += view.weight[v];
    for (const auto& nb : view.adjacency[v]) {
      // Edges inside T are seen from both ends; count them once.
      if (in_s[nb.vertex] || (in_t[nb.vertex] && nb.vertex > v)) r.benefit += nb.benefit;
    }
  }
  return r;
}

namespace detail {

class GreedyRun {
 public:
  GreedyRun(const ScaledInstance& s, const GreedyConfig& cfg)
      : s_(s), cap_(cfg.subset_cap(std::max(1, s.free_count()))),
        view_(make_graph_view(s.problem)), n_(s.n()), in_s_(n_, 0),
        gain_(n_, 0), usage_(s.p(), 0), t_usage_(s.p(), 0) {}

  Assignment run() {
    std::int64_t s_benefit = 0;
    for (;;) {
      best_set_.clear();
      have_best_ = false;
      current_.clear();
      search(0, Ratio{});
      if (!have_best_ || !(best_ratio_ > Ratio{})) break;  // nothing left to gain

      if (fits_with_s(best_set_)) {
        for (int v : best_set_) add(v);
        s_benefit += best_ratio_.benefit;
        continue;
      }
      // S u T overshoots a budget: keep the better feasible one of S and T.
      const std::int64_t t_benefit = standalone_benefit(best_set_);
      if (fits_alone(best_set_) && t_benefit > s_benefit) {
        std::fill(in_s_.begin(), in_s_.end(), 0);
        std::fill(gain_.begin(), gain_.end(), 0);
        std::fill(usage_.begin(), usage_.end(), 0);
        for (int v : best_set_) add(v);
      }
      break;
    }
    complete();
    return in_s_;
  }

 private:
  bool selectable(int v) const { return !s_.fixed[v] && !in_s_[v]; }

  void add(int v) {
    in_s_[v] = 1;
    for (const auto& nb : view_.adjacency[v]) gain_[nb.vertex] += nb.benefit;
    for (int i = 0; i < s_.p(); ++i) usage_[i] += s_.problem.A(i, v);
  }

  bool fits_with_s(std::span<const int> T) const {
    for (int i = 0; i < s_.p(); ++i) {
      std::int64_t u = usage_[i];
      for (int v : T) u += s_.problem.A(i, v);
      if (u > s_.W) return false;
    }
    return true;
  }

  bool fits_alone(std::span<const int> T) const {
    for (int i = 0; i < s_.p(); ++i) {
      std::int64_t u = 0;
      for (int v : T) u += s_.problem.A(i, v);
      if (u > s_.W) return false;
    }
    return true;
  }

  std::int64_t standalone_benefit(std::span<const int> T) const {
    std::int64_t b = 0;
    for (std::size_t a = 0; a < T.size(); ++a) {
      for (std::size_t c = a + 1; c < T.size(); ++c) b += s_.problem.B(T[a], T[c]);
    }
    return b;
  }

  // Depth-first enumeration in lexicographic tuple order; `partial` is the
  // ratio of `current_`. Strict improvement keeps the earliest tuple on ties.
  // Weights are positive, so a tuple over budget has no feasible extension.
  void search(int start, Ratio partial) {
    for (int v = start; v < n_; ++v) {
      if (!selectable(v)) continue;
      bool fits = true;
      for (int i = 0; i < s_.p(); ++i) {
        t_usage_[i] += s_.problem.A(i, v);
        if (t_usage_[i] > s_.W) fits = false;
      }
      if (!fits) {
        for (int i = 0; i < s_.p(); ++i) t_usage_[i] -= s_.problem.A(i, v);
        continue;
      }
      Ratio r = partial;
      r.benefit += gain_[v];
      for (int u : current_) r.benefit += s_.problem.B(u, v);
      r.weight += view_.weight[v];
      current_.push_back(v);
      if (!have_best_ || r > best_ratio_) {
        best_ratio_ = r;
        best_set_ = current_;
        have_best_ = true;
      }
      if (static_cast<int>(current_.size()) < cap_) search(v + 1, r);
      current_.pop_back();
      for (int i = 0; i < s_.p(); ++i) t_usage_[i] -= s_.problem.A(i, v);
    }
  }

  // Adds single vertices, best marginal ratio first, until nothing fits.
  // Every added vertex has nonnegative marginal benefit, and the result is a
  // maximal feasible set.
  void complete() {
    for (;;) {
      int pick = -1;
      Ratio best;
      for (int v = 0; v < n_; ++v) {
        if (!selectable(v)) continue;
        const int one[] = {v};
        if (!fits_with_s(one)) continue;
        const Ratio r{gain_[v], view_.weight[v]};
        if (pick < 0 || r > best) {
          pick = v;
          best = r;
        }
      }
      if (pick < 0) return;
      add(pick);
    }
  }

  const ScaledInstance& s_;
  int cap_;
  GraphView view_;
  int n_;
  Assignment in_s_;
  std::vector<std::int64_t> gain_;  // sum of b_uv over u in S
  std::vector<std::int64_t> usage_;
  std::vector<std::int64_t> t_usage_;  // usage of current_ alone

  std::vector<int> current_;
  std::vector<int> best_set_;
  Ratio best_ratio_;
  bool have_best_ = false;
};

}  // namespace detail

/// Greedy on a scaled (usually pruned and split) instance. The result is
/// evaluated against the scaled problem and always feasible for it.
inline BinarySolution greedy_solve(const ScaledInstance& s, const GreedyConfig& cfg) {
  if (cfg.t < 1) throw std::invalid_argument("greedy parameter t must be >= 1");
  if (s.free_count() == 0) return zero_solution(s.problem);
  detail::GreedyRun run(s, cfg);
  auto sol = evaluate(s.problem, run.run());
  if (!feasible(s.problem, sol)) throw std::logic_error("greedy produced an infeasible set");
  return sol;
}

/// True when sol selects every free variable or fills at least half of W in
/// some constraint (the property every maximal light-item solution has).
inline bool greedy_budget_certificate(const BinarySolution& sol, const ScaledInstance& s) {
  bool all = true;
  for (int j = 0; j < s.n(); ++j) {
    if (!s.fixed[j] && !sol.x[j]) {
      all = false;
      break;
    }
  }
  if (all) return true;
  const auto usage = evaluate(s.problem, sol.x).usage;
  for (int i = 0; i < s.p(); ++i) {
    if (2 * usage[i] >= s.W) return true;
  }
  return false;
}

}  // namespace piqp

#endif  // PIQP_GREEDY_HPP_

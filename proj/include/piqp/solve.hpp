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

// End-to-end driver: scale, prune, split into the light and heavy parts, run
// every applicable strategy on each part, optimize the linear term on its
// own, and return the best solution measured on the original instance.

#ifndef PIQP_SOLVE_HPP_
#define PIQP_SOLVE_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "piqp/generate.hpp"
#include "piqp/greedy.hpp"
#include "piqp/instance.hpp"
#include "piqp/mkp.hpp"
#include "piqp/relaxation.hpp"
#include "piqp/rounding.hpp"

namespace piqp {

enum class Method { kAuto, kSocp, kGreedy, kEdge, kLocal };

inline Method parse_method(const std::string& s) {
  if (s == "auto") return Method::kAuto;
  if (s == "socp") return Method::kSocp;
  if (s == "greedy") return Method::kGreedy;
  if (s == "edge") return Method::kEdge;
  if (s == "local") return Method::kLocal;
  throw std::invalid_argument("unknown method '" + s + "'");
}

struct AutoConfig {
  Method method = Method::kAuto;
  GreedyConfig greedy;
  SolverConfig relax;
  RoundingConfig rounding;
};

/// Strategy names in tie-break order: on equal objective the earlier wins.
inline const std::vector<std::string>& strategy_order() {
  static const std::vector<std::string> order = {"linear", "greedy", "edge", "rounding",
                                                 "local"};
  return order;
}

struct PartReport {
  std::string name;  // "piqps" or "piqpr"
  int free = 0;
  std::int64_t a_max = 0;
  bool relaxed = false;
  double relaxation_value = 0.0;
  bool converged = true;
  double beta = 0.0;
  double lambda = 0.0;
  int trials = 0;
  TrialStats stats;
  Diagnostics diagnostics;
  std::vector<double> budget_slack;
  std::map<std::string, std::int64_t> values;  // original-instance objective
};

struct SolveReport {
  BinarySolution solution;  // on the original instance
  std::string strategy = "none";
  /// Relaxation value of the pruned scaled instance (quadratic part only).
  double upper_bound = 0.0;
  bool upper_bound_converged = true;
  std::int64_t W = 0;
  std::int64_t a_max = 0;
  std::map<std::string, std::int64_t> strategy_values;  // best over parts
  std::vector<PartReport> parts;
  std::vector<std::string> warnings;

  bool converged() const {
    if (!upper_bound_converged) return false;
    for (const auto& p : parts) {
      if (!p.converged) return false;
    }
    return true;
  }
};

namespace detail {

inline bool wants(Method m, Method single) { return m == Method::kAuto || m == single; }

struct Candidate {
  std::string strategy;
  BinarySolution sol;
};

inline void consider(SolveReport& report, std::vector<Candidate>& pool, const std::string& name,
                     const ScaledInstance& part, const Assignment& x, PartReport* pr) {
  auto sol = evaluate(part.base, x);
  if (!feasible(part.base, sol)) {
    throw std::logic_error(name + " produced a point infeasible for the original instance");
  }
  const auto v = sol.objective();
  if (pr) {
    auto [it, fresh] = pr->values.try_emplace(name, v);
    if (!fresh) it->second = std::max(it->second, v);
  }
  auto [it, fresh] = report.strategy_values.try_emplace(name, v);
  if (!fresh) it->second = std::max(it->second, v);
  pool.push_back({name, std::move(sol)});
}

inline void solve_part(const ScaledInstance& part, const std::string& name, std::uint64_t stream,
                       const AutoConfig& cfg, SolveReport& report,
                       std::vector<Candidate>& pool) {
  PartReport pr;
  pr.name = name;
  pr.free = part.free_count();
  pr.a_max = part.active_a_max();
  if (pr.free == 0) {
    report.parts.push_back(std::move(pr));
    return;
  }
  if (wants(cfg.method, Method::kGreedy)) {
    consider(report, pool, "greedy", part, greedy_solve(part, cfg.greedy).x, &pr);
  }
  if (wants(cfg.method, Method::kEdge)) {
    consider(report, pool, "edge", part, best_edge_solution(part).x, &pr);
  }
  const bool need_relaxation =
      cfg.method == Method::kAuto || cfg.method == Method::kSocp || cfg.method == Method::kLocal;
  if (need_relaxation) {
    pr.beta = cfg.rounding.beta > 0.0 ? cfg.rounding.beta : static_cast<double>(part.W);
    if (pr.beta < static_cast<double>(pr.a_max) || pr.beta > static_cast<double>(part.W)) {
      report.warnings.push_back(name + ": beta outside [a_max, W]; relaxation strategies skipped");
    } else {
      SolverConfig rc = cfg.relax;
      rc.seed = derive_seed(cfg.relax.seed, 1, stream);
      const auto rs = solve_relaxation(part, rc);
      pr.relaxed = true;
      pr.relaxation_value = rs.value;
      pr.converged = rs.converged;
      if (!rs.converged) report.warnings.push_back(name + ": relaxation did not converge");
      pr.budget_slack = check_sqrt_budget_bound(rs, part, pr.beta);
      pr.lambda = compute_lambda(part, pr.beta);
      pr.diagnostics = concentration_diagnostics(rs, part, pr.lambda, cfg.rounding.gamma);
      if (cfg.method != Method::kLocal) {
        pr.trials = cfg.rounding.trials > 0 ? cfg.rounding.trials
                                            : default_trials(part.n(), cfg.rounding.epsilon);
        auto out = randomized_rounding(part, rs, pr.lambda, pr.trials, cfg.rounding, stream);
        pr.stats = std::move(out.stats);
        consider(report, pool, "rounding", part, out.best.x, &pr);
      }
      if (cfg.method != Method::kSocp) {
        consider(report, pool, "local", part, local_knapsack_solution(part, rs, pr.lambda).x,
                 &pr);
      }
    }
  }
  report.parts.push_back(std::move(pr));
}

}  // namespace detail

inline SolveReport solve_auto(const PiqpInstance& inst, const AutoConfig& cfg = {}) {
  require_valid(inst);
  if (cfg.greedy.t < 1) throw std::invalid_argument("greedy parameter t must be >= 1");
  if (cfg.rounding.trials < 0) throw std::invalid_argument("trials must be >= 0");
  if (cfg.rounding.beta < 0.0) throw std::invalid_argument("beta must be positive");
  SolveReport report;
  report.warnings = regime_warnings(inst);
  const auto pruned = prune_infeasible_pairs(scale(inst));
  report.W = pruned.W;
  report.a_max = pruned.a_max;
  std::vector<detail::Candidate> pool;

  if (cfg.method == Method::kAuto) {
    const auto lin = round_p_plus_1(linear_part(inst));
    detail::consider(report, pool, "linear", pruned, lin.x, nullptr);
  }
  const auto [light, heavy] = split_piqps_piqpr(pruned);
  detail::solve_part(light, "piqps", 0, cfg, report, pool);
  detail::solve_part(heavy, "piqpr", 1, cfg, report, pool);

  if (has_quadratic_benefit(pruned.problem)) {
    SolverConfig rc = cfg.relax;
    rc.seed = derive_seed(cfg.relax.seed, 1, 2);
    const auto rs = solve_relaxation(pruned, rc);
    report.upper_bound = rs.value;
    report.upper_bound_converged = rs.converged;
    if (!rs.converged) report.warnings.push_back("upper bound relaxation did not converge");
  }

  report.solution = zero_solution(inst);
  const auto& order = strategy_order();
  auto rank = [&](const std::string& s) {
    return std::find(order.begin(), order.end(), s) - order.begin();
  };
  bool have = false;
  for (auto& c : pool) {
    const auto v = c.sol.objective();
    const auto w = report.solution.objective();
    if (!have || v > w || (v == w && rank(c.strategy) < rank(report.strategy))) {
      report.solution = c.sol;
      report.strategy = c.strategy;
      have = true;
    }
  }
  return report;
}

inline nlohmann::ordered_json trial_stats_json(const TrialStats& st) {
  nlohmann::ordered_json j;
  j["trials"] = st.trials.size();
  j["feasibility_rate"] = st.feasibility_rate;
  j["within_delta_rate"] = st.within_delta_rate;
  j["mean_objective"] = st.mean_objective;
  j["mean_usage"] = st.mean_usage;
  return j;
}

inline nlohmann::ordered_json report_to_json(const SolveReport& r) {
  nlohmann::ordered_json j;
  j["value"] = r.solution.objective();
  j["quadratic"] = r.solution.quadratic;
  j["linear"] = r.solution.linear;
  j["x"] = std::vector<int>(r.solution.x.begin(), r.solution.x.end());
  j["usage"] = r.solution.usage;
  j["strategy"] = r.strategy;
  j["upper_bound"] = r.upper_bound;
  // Top-level diagnostics come from the first part that was relaxed.
  std::string label = "none";
  nlohmann::ordered_json stats = nullptr;
  for (const auto& p : r.parts) {
    if (p.relaxed) {
      label = p.diagnostics.label;
      if (p.trials > 0) stats = trial_stats_json(p.stats);
      break;
    }
  }
  j["trial_stats"] = stats;
  j["case_label"] = label;
  nlohmann::ordered_json strategies = nlohmann::ordered_json::object();
  for (const auto& name : strategy_order()) {
    if (auto it = r.strategy_values.find(name); it != r.strategy_values.end()) {
      strategies[name] = it->second;
    }
  }
  j["strategies"] = strategies;
  j["W"] = r.W;
  j["a_max"] = r.a_max;
  nlohmann::ordered_json parts = nlohmann::ordered_json::array();
  for (const auto& p : r.parts) {
    nlohmann::ordered_json pj;
    pj["name"] = p.name;
    pj["free"] = p.free;
    pj["a_max"] = p.a_max;
    pj["relaxed"] = p.relaxed;
    if (p.relaxed) {
      pj["relaxation_value"] = p.relaxation_value;
      pj["converged"] = p.converged;
      pj["beta"] = p.beta;
      pj["lambda"] = p.lambda;
      pj["budget_slack"] = p.budget_slack;
      pj["case_label"] = p.diagnostics.label;
      pj["favored"] = p.diagnostics.favored;
      pj["eps"] = {p.diagnostics.eps0, p.diagnostics.eps1, p.diagnostics.eps2};
      if (p.trials > 0) pj["trial_stats"] = trial_stats_json(p.stats);
    }
    nlohmann::ordered_json vals = nlohmann::ordered_json::object();
    for (const auto& name : strategy_order()) {
      if (auto it = p.values.find(name); it != p.values.end()) vals[name] = it->second;
    }
    pj["strategies"] = vals;
    parts.push_back(std::move(pj));
  }
  j["parts"] = parts;
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace piqp

#endif  // PIQP_SOLVE_HPP_

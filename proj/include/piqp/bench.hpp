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

// Ratio benchmark: generate a suite, solve every instance, compare with the
// oracle where it is affordable, and emit CSV.
//
// Seeds: instance j of the suite uses derive_seed(master, 0, j) for the
// generator and derive_seed(master, 1, j) for the solver.

#ifndef PIQP_BENCH_HPP_
#define PIQP_BENCH_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "piqp/generate.hpp"
#include "piqp/instance.hpp"
#include "piqp/oracle.hpp"
#include "piqp/solve.hpp"

namespace piqp {

struct BenchSuite {
  std::vector<int> sizes;
  int count = 1;  // instances per size
  GenerateParams gen;
  AutoConfig solver;
  std::uint64_t seed = 0;
  int oracle_limit = kDefaultOracleLimit;
  int jobs = 1;
  bool timing = true;
};

struct BenchRow {
  int id = 0;
  std::string kind;
  int n = 0, p = 0, t = 0;
  std::int64_t W = 0, a_max = 0;
  std::map<std::string, std::int64_t> strategies;
  std::int64_t auto_value = 0;
  std::string strategy;
  std::optional<std::int64_t> oracle;
  double upper_bound = 0.0;
  double ratio = 1.0;
  double greedy_factor = 0.0;  // 8 p min(n, W) / t
  double global_factor = 0.0;  // a_max sqrt(n) log2(n)^(2 + gamma)
  std::string status = "ok";
  double solve_ms = 0.0, oracle_ms = 0.0;
};

inline double greedy_factor(int p, int n, std::int64_t W, int t) {
  return 8.0 * p * static_cast<double>(std::min<std::int64_t>(n, W)) / t;
}

inline double global_factor(std::int64_t a_max, int n, double gamma) {
  const double lg = std::log2(std::max(2, n));
  return static_cast<double>(std::max<std::int64_t>(1, a_max)) * std::sqrt(n) *
         std::pow(lg, 2.0 + gamma);
}

/// Reference value over solution value; 0/0 is 1 and x/0 is +inf.
inline double empirical_ratio(double reference, double value) {
  if (value <= 0.0) return reference <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return reference / value;
}

inline BenchRow bench_instance(const PiqpInstance& inst, int id, const std::string& kind,
                               const BenchSuite& suite) {
  using clock = std::chrono::steady_clock;
  BenchRow row;
  row.id = id;
  row.kind = kind;
  row.n = inst.n;
  row.p = inst.p;
  row.t = suite.solver.greedy.t;
  try {
    AutoConfig cfg = suite.solver;
    cfg.relax.seed = derive_seed(suite.seed, 1, id);
    cfg.rounding.seed = derive_seed(suite.seed, 1, id);
    const auto t0 = clock::now();
    const auto report = solve_auto(inst, cfg);
    const auto t1 = clock::now();
    row.solve_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.W = report.W;
    row.a_max = report.a_max;
    row.strategies = report.strategy_values;
    row.auto_value = report.solution.objective();
    row.strategy = report.strategy;
    row.upper_bound = report.upper_bound;
    if (!report.converged()) row.status = "nonconverged";
    double reference = report.upper_bound + report.solution.linear;
    if (inst.n <= suite.oracle_limit) {
      const auto t2 = clock::now();
      row.oracle = brute_force(inst, suite.oracle_limit).optimum;
      row.oracle_ms = std::chrono::duration<double, std::milli>(clock::now() - t2).count();
      reference = static_cast<double>(*row.oracle);
    }
    row.ratio = empirical_ratio(reference, static_cast<double>(row.auto_value));
    row.greedy_factor = greedy_factor(row.p, row.n, row.W, row.t);
    row.global_factor = global_factor(row.a_max, row.n, suite.solver.rounding.gamma);
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

/// Instances in suite order: sizes outer, repetitions inner.
inline std::vector<std::pair<int, PiqpInstance>> bench_instances(const BenchSuite& suite) {
  std::vector<std::pair<int, PiqpInstance>> out;
  int id = 0;
  for (int n : suite.sizes) {
    for (int r = 0; r < suite.count; ++r, ++id) {
      GenerateParams prm = suite.gen;
      prm.qkp.n = n;
      out.emplace_back(id, generate(prm, derive_seed(suite.seed, 0, id)));
    }
  }
  return out;
}

inline std::string kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::kQkp:
      return "qkp";
    case InstanceKind::kDsp:
      return "dsp";
    case InstanceKind::kClique:
      return "clique";
  }
  return "?";
}

/// Runs the suite; rows come back ordered by id whatever `jobs` is.
inline std::vector<BenchRow> run_bench(const BenchSuite& suite) {
  const auto instances = bench_instances(suite);
  std::vector<BenchRow> rows(instances.size());
  const std::string kind = kind_name(suite.gen.kind);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < instances.size();) {
      rows[k] = bench_instance(instances[k].second, instances[k].first, kind, suite);
    }
  };
  const int jobs = std::max(1, std::min<int>(suite.jobs, static_cast<int>(instances.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

inline const char* bench_header() {
  return "id,kind,n,p,W,a_max,t,linear,greedy,edge,rounding,local,auto,strategy,oracle,"
         "upper_bound,ratio,greedy_factor,global_factor,status,solve_ms,oracle_ms";
}

namespace detail {

inline std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

inline std::string csv_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace detail

inline void write_bench_row(std::ostream& os, const BenchRow& r, bool timing) {
  os << r.id << ',' << r.kind << ',' << r.n << ',' << r.p << ',' << r.W << ',' << r.a_max << ','
     << r.t;
  for (const char* name : {"linear", "greedy", "edge", "rounding", "local"}) {
    os << ',';
    if (auto it = r.strategies.find(name); it != r.strategies.end()) os << it->second;
  }
  os << ',' << r.auto_value << ',' << r.strategy << ',';
  if (r.oracle) os << *r.oracle;
  os << ',' << detail::fmt(r.upper_bound) << ',' << detail::fmt(r.ratio) << ','
     << detail::fmt(r.greedy_factor) << ',' << detail::fmt(r.global_factor) << ','
     << detail::csv_field(r.status) << ',';
  if (timing) os << detail::fmt(r.solve_ms) << ',' << detail::fmt(r.oracle_ms);
  else os << ',';
  os << '\n';
}

struct BenchSummary {
  int rows = 0;
  int errors = 0;
  double max_ratio = 0.0;
  /// Rows whose ratio exceeds the greedy factor or the global factor.
  int greedy_violations = 0;
  int global_violations = 0;
  /// max ratio / global factor; the constant the global bound needs here.
  double measured_constant = 0.0;
};

inline BenchSummary summarize(const std::vector<BenchRow>& rows) {
  BenchSummary s;
  for (const auto& r : rows) {
    ++s.rows;
    if (r.status.rfind("error", 0) == 0) {
      ++s.errors;
      continue;
    }
    s.max_ratio = std::max(s.max_ratio, r.ratio);
    if (r.ratio > r.greedy_factor) ++s.greedy_violations;
    if (r.ratio > r.global_factor) ++s.global_violations;
    if (r.global_factor > 0) s.measured_constant = std::max(s.measured_constant, r.ratio / r.global_factor);
  }
  return s;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows, bool timing) {
  os << bench_header() << '\n';
  for (const auto& r : rows) write_bench_row(os, r, timing);
  if (rows.empty()) return;
  const auto s = summarize(rows);
  os << "# rows=" << s.rows << " errors=" << s.errors << " max_ratio=" << detail::fmt(s.max_ratio)
     << " greedy_factor_violations=" << s.greedy_violations
     << " global_factor_violations=" << s.global_violations
     << " measured_constant=" << detail::fmt(s.measured_constant) << '\n';
}

}  // namespace piqp

#endif  // PIQP_BENCH_HPP_

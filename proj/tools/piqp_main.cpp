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

// piqp command line: gen, solve, oracle, mkp, bench.
//
// Exit status: 0 success, 1 a relaxation did not converge, 2 bad input,
// 3 internal error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "piqp/piqp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNonConverged = 1;
constexpr int kExitInput = 2;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out;
  bool quiet = false;
};

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw piqp::InputError("cannot write '" + g.out + "'");
  f << text;
}

void note(const GlobalOptions& g, const std::string& msg) {
  if (!g.quiet) std::cerr << msg << "\n";
}

struct GenOptions {
  std::string kind = "qkp";
  piqp::GenerateParams params;
};

void add_gen(CLI::App& app, GenOptions& o) {
  auto& q = o.params.qkp;
  app.add_option("--kind", o.kind, "qkp, dsp or clique")->check(CLI::IsMember({"qkp", "dsp", "clique"}));
  app.add_option("--n", q.n, "number of variables / vertices");
  app.add_option("--p", q.p, "number of constraints (qkp)");
  app.add_option("--density", q.density, "edge probability");
  app.add_option("--benefit-min", q.benefit.lo);
  app.add_option("--benefit-max", q.benefit.hi);
  app.add_option("--weight-min", q.weight.lo);
  app.add_option("--weight-max", q.weight.hi);
  app.add_option("--linear-min", q.linear.lo);
  app.add_option("--linear-max", q.linear.hi);
  app.add_option("--budget-fraction", q.budget_fraction,
                 "budget as a fraction of the row weight sum (qkp)");
  app.add_option("--graph", o.params.graph, "gnp, kN, cycleN, pathN or starN");
  app.add_option("--k", o.params.k, "subgraph size (dsp)");
  app.add_option("--t", o.params.t, "clique size (clique)");
}

int cmd_gen(const GenOptions& o, const GlobalOptions& g) {
  piqp::GenerateParams prm = o.params;
  prm.kind = piqp::parse_kind(o.kind);
  emit(g, piqp::dump_instance(piqp::generate(prm, g.seed)));
  return kExitOk;
}

struct SolveOptions {
  std::string path;
  std::string method = "auto";
  piqp::AutoConfig cfg;
  bool discard = false;
  int indent = -1;
};

void add_solve(CLI::App& app, SolveOptions& o) {
  auto& c = o.cfg;
  app.add_option("instance", o.path, "instance file")->required();
  app.add_option("--method", o.method, "auto, socp, greedy, edge or local")
      ->check(CLI::IsMember({"auto", "socp", "greedy", "edge", "local"}));
  app.add_option("--t", c.greedy.t, "greedy subset parameter")->check(CLI::PositiveNumber);
  app.add_option("--trials", c.rounding.trials, "rounding trials (0: ceil(n^(1/2+epsilon)))");
  app.add_option("--epsilon", c.rounding.epsilon);
  app.add_option("--beta", c.rounding.beta, "budget lower bound (default W)");
  app.add_option("--gamma", c.rounding.gamma);
  app.add_option("--delta", c.rounding.delta);
  app.add_option("--max-iters", c.relax.max_iterations);
  app.add_option("--rel-tol", c.relax.rel_tol);
  app.add_option("--multistarts", c.relax.multistarts);
  app.add_flag("--discard", o.discard, "discard infeasible trials instead of repairing");
  app.add_option("--indent", o.indent, "pretty-print JSON with this indent");
}

int cmd_solve(SolveOptions o, const GlobalOptions& g) {
  const auto inst = piqp::read_instance(o.path);
  o.cfg.method = piqp::parse_method(o.method);
  o.cfg.relax.seed = g.seed;
  o.cfg.rounding.seed = g.seed;
  o.cfg.rounding.repair = !o.discard;
  const auto report = piqp::solve_auto(inst, o.cfg);
  emit(g, piqp::report_to_json(report).dump(o.indent) + "\n");
  for (const auto& w : report.warnings) note(g, "warning: " + w);
  return report.converged() ? kExitOk : kExitNonConverged;
}

struct OracleOptions {
  std::string path;
  int limit = piqp::kDefaultOracleLimit;
};

int cmd_oracle(const OracleOptions& o, const GlobalOptions& g) {
  const auto inst = piqp::read_instance(o.path);
  const auto r = piqp::brute_force(inst, o.limit);
  nlohmann::ordered_json j;
  j["optimum"] = r.optimum;
  j["x"] = std::vector<int>(r.argmax.x.begin(), r.argmax.x.end());
  j["usage"] = r.argmax.usage;
  j["count_explored"] = r.count_explored;
  emit(g, j.dump() + "\n");
  return kExitOk;
}

int cmd_mkp(const std::string& path, const GlobalOptions& g) {
  const auto inst = piqp::parse_linear_instance(piqp::detail::slurp(path), path);
  const auto r = piqp::round_p_plus_1_detail(piqp::linear_part(inst));
  auto bits = [](const piqp::Assignment& x) { return std::vector<int>(x.begin(), x.end()); };
  nlohmann::ordered_json j;
  std::vector<std::string> lp;
  for (const auto& v : r.lp.x_exact) lp.push_back(v.str());
  j["lp_x"] = lp;
  j["lp_value"] = r.lp.value_exact.str();
  j["fractional"] = r.lp.fractional;
  j["integral_part"] = {{"x", bits(r.integral_part.x)}, {"value", r.integral_part.linear}};
  j["best_fractional"] = {{"x", bits(r.best_fractional.x)}, {"value", r.best_fractional.linear}};
  j["value"] = r.chosen.linear;
  j["x"] = bits(r.chosen.x);
  emit(g, j.dump() + "\n");
  return kExitOk;
}

struct BenchOptions {
  GenOptions gen;
  SolveOptions solve;
  std::vector<int> sizes = {10};
  int count = 10;
  int oracle_limit = 16;
  int jobs = 1;
  bool no_timing = false;
};

int cmd_bench(BenchOptions o, const GlobalOptions& g) {
  piqp::BenchSuite suite;
  suite.sizes = o.sizes;
  suite.count = o.count;
  suite.gen = o.gen.params;
  suite.gen.kind = piqp::parse_kind(o.gen.kind);
  suite.solver = o.solve.cfg;
  suite.solver.method = piqp::parse_method(o.solve.method);
  suite.solver.rounding.repair = !o.solve.discard;
  suite.seed = g.seed;
  suite.oracle_limit = o.oracle_limit;
  suite.jobs = o.jobs;
  suite.timing = !o.no_timing;
  if (suite.count < 0) throw piqp::InputError("--count must be >= 0");
  const auto rows = piqp::run_bench(suite);
  std::ostringstream os;
  piqp::write_bench_csv(os, rows, suite.timing);
  emit(g, os.str());
  const auto s = piqp::summarize(rows);
  if (s.errors > 0) note(g, std::to_string(s.errors) + " rows failed");
  for (const auto& r : rows) {
    if (r.status == "nonconverged") return kExitNonConverged;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximation algorithms for positive 0-1 quadratic programs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option defaults; flags win");
  GlobalOptions g;
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--out", g.out, "write output to this file instead of stdout");
  app.add_flag("--quiet", g.quiet, "suppress diagnostics on stderr");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  add_gen(*gen_cmd, gen);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "approximate an instance");
  add_solve(*solve_cmd, solve);

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum by enumeration");
  oracle_cmd->add_option("instance", oracle.path)->required();
  oracle_cmd->add_option("--limit", oracle.limit, "refuse instances with more variables");

  std::string mkp_path;
  auto* mkp_cmd = app.add_subcommand("mkp", "LP rounding for a linear knapsack instance");
  mkp_cmd->add_option("instance", mkp_path)->required();

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "ratio benchmark as CSV");
  add_gen(*bench_cmd, bench.gen);
  {
    auto& c = bench.solve.cfg;
    bench_cmd->add_option("--method", bench.solve.method)
        ->check(CLI::IsMember({"auto", "socp", "greedy", "edge", "local"}));
    bench_cmd->add_option("--trials", c.rounding.trials);
    bench_cmd->add_option("--beta", c.rounding.beta);
    bench_cmd->add_option("--gamma", c.rounding.gamma);
    bench_cmd->add_option("--max-iters", c.relax.max_iterations);
    bench_cmd->add_option("--rel-tol", c.relax.rel_tol);
    bench_cmd->add_option("--greedy-t", c.greedy.t)->check(CLI::PositiveNumber);
    bench_cmd->add_flag("--discard", bench.solve.discard);
  }
  bench_cmd->add_option("--sizes", bench.sizes, "instance sizes")->delimiter(',');
  bench_cmd->add_option("--count", bench.count, "instances per size");
  bench_cmd->add_option("--oracle-limit", bench.oracle_limit);
  bench_cmd->add_option("--jobs", bench.jobs, "worker threads");
  bench_cmd->add_flag("--no-timing", bench.no_timing, "leave timing columns empty");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, g);
    if (*solve_cmd) return cmd_solve(solve, g);
    if (*oracle_cmd) return cmd_oracle(oracle, g);
    if (*mkp_cmd) return cmd_mkp(mkp_path, g);
    if (*bench_cmd) return cmd_bench(bench, g);
  } catch (const piqp::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return kExitOk;
}

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

// Seeded instance generators. Every generator is a pure function of its
// parameters and seed.

#ifndef PIQP_GENERATE_HPP_
#define PIQP_GENERATE_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "piqp/instance.hpp"

namespace piqp {

/// Derives an independent 64-bit seed for stream `stream` / item `index`
/// from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master),
                    static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct QkpParams {
  int n = 10;
  int p = 1;
  double density = 0.5;
  IntRange benefit{1, 9};
  IntRange weight{1, 9};
  IntRange linear{0, 0};
  /// Each budget is drawn uniformly from [max_j a_ij, budget_fraction * sum_j a_ij].
  double budget_fraction = 0.5;
};

/// Simple undirected graph used by the dsp and clique generators.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Builds a graph from a name: "k<N>" complete, "cycle<N>", "path<N>",
/// "star<N>" (center 0), or "gnp" for G(n, density) drawn with `seed`.
inline Graph make_graph(const std::string& name, int n, double density,
                        std::uint64_t seed) {
  auto parse_n = [&](std::size_t prefix) {
    const std::string digits = name.substr(prefix);
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("bad graph name '" + name + "'");
    }
    return std::stoi(digits);
  };
  Graph g;
  if (name == "gnp") {
    if (n < 0) throw InputError("graph size must be nonnegative");
    if (!(density >= 0.0 && density <= 1.0)) {
      throw InputError("density must lie in [0,1]");
    }
    g.n = n;
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(density);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (coin(rng)) g.edges.emplace_back(u, v);
      }
    }
  } else if (name.rfind("cycle", 0) == 0) {
    g.n = parse_n(5);
    for (int u = 0; u < g.n && g.n >= 3; ++u) {
      const int v = (u + 1) % g.n;
      g.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  } else if (name.rfind("path", 0) == 0) {
    g.n = parse_n(4);
    for (int u = 0; u + 1 < g.n; ++u) g.edges.emplace_back(u, u + 1);
  } else if (name.rfind("star", 0) == 0) {
    g.n = parse_n(4);
    for (int u = 1; u < g.n; ++u) g.edges.emplace_back(0, u);
  } else if (!name.empty() && (name[0] == 'k' || name[0] == 'K')) {
    g.n = parse_n(1);
    for (int u = 0; u < g.n; ++u) {
      for (int v = u + 1; v < g.n; ++v) g.edges.emplace_back(u, v);
    }
  } else {
    throw InputError("unknown graph '" + name + "'");
  }
  return g;
}

namespace detail {

inline void check_range(const IntRange& r, const char* what, std::int64_t min_lo) {
  if (r.lo < min_lo || r.hi < r.lo) {
    throw InputError(std::string("invalid ") + what + " range [" +
                     std::to_string(r.lo) + "," + std::to_string(r.hi) + "]");
  }
}

/// Unit weights, unit edge benefits, a single budget.
inline PiqpInstance unit_graph_instance(const Graph& g, std::int64_t budget) {
  if (budget < 1) throw InputError("budget must be positive");
  PiqpInstance inst = PiqpInstance::zeros(g.n, 1, budget);
  for (auto [u, v] : g.edges) inst.set_edge(u, v, 1);
  for (int j = 0; j < g.n; ++j) inst.A(0, j) = 1;
  return inst;
}

}  // namespace detail

inline PiqpInstance generate_qkp(const QkpParams& prm, std::uint64_t seed) {
  if (prm.n < 0) throw InputError("n must be nonnegative");
  if (prm.p < 1) throw InputError("p must be at least 1");
  if (!(prm.density >= 0.0 && prm.density <= 1.0)) {
    throw InputError("density must lie in [0,1]");
  }
  if (!(prm.budget_fraction > 0.0 && prm.budget_fraction <= 1.0)) {
    throw InputError("budget fraction must lie in (0,1]");
  }
  detail::check_range(prm.benefit, "benefit", 0);
  detail::check_range(prm.weight, "weight", 0);
  detail::check_range(prm.linear, "linear benefit", 0);

  std::mt19937_64 rng(seed);
  auto draw = [&](const IntRange& r) {
    return std::uniform_int_distribution<std::int64_t>(r.lo, r.hi)(rng);
  };
  std::bernoulli_distribution edge(prm.density);

  PiqpInstance inst = PiqpInstance::zeros(prm.n, prm.p);
  for (int u = 0; u < prm.n; ++u) {
    for (int v = u + 1; v < prm.n; ++v) {
      if (edge(rng)) inst.set_edge(u, v, draw(prm.benefit));
    }
  }
  for (int u = 0; u < prm.n; ++u) inst.c[u] = draw(prm.linear);
  for (int i = 0; i < prm.p; ++i) {
    std::int64_t total = 0;
    std::int64_t heaviest = 0;
    for (int j = 0; j < prm.n; ++j) {
      inst.A(i, j) = draw(prm.weight);
      total += inst.A(i, j);
      heaviest = std::max(heaviest, inst.A(i, j));
    }
    const std::int64_t lo = std::max<std::int64_t>(1, heaviest);
    const auto hi = std::max(lo, static_cast<std::int64_t>(prm.budget_fraction * total));
    inst.budgets[i] = draw({lo, hi});
  }
  inst.meta = {{"kind", "qkp"},         {"seed", seed},
               {"density", prm.density}, {"budget_fraction", prm.budget_fraction}};
  return inst;
}

/// Densest-k-subgraph as a knapsack: unit weights and benefits, budget k.
inline PiqpInstance generate_dsp(const Graph& g, int k) {
  if (k < 1 || k > std::max(g.n, 1)) throw InputError("k must lie in [1,n]");
  PiqpInstance inst = detail::unit_graph_instance(g, k);
  inst.meta = {{"kind", "dsp"}, {"k", k}};
  return inst;
}

/// Clique detection: optimum reaches t(t-1)/2 iff the graph has a t-clique.
inline PiqpInstance generate_clique(const Graph& g, int t) {
  if (t < 1) throw InputError("t must be at least 1");
  PiqpInstance inst = detail::unit_graph_instance(g, t);
  inst.meta = {{"kind", "clique"}, {"t", t}};
  return inst;
}

enum class InstanceKind { kQkp, kDsp, kClique };

inline InstanceKind parse_kind(const std::string& s) {
  if (s == "qkp") return InstanceKind::kQkp;
  if (s == "dsp") return InstanceKind::kDsp;
  if (s == "clique") return InstanceKind::kClique;
  throw InputError("unknown instance kind '" + s + "'");
}

struct GenerateParams {
  InstanceKind kind = InstanceKind::kQkp;
  QkpParams qkp;
  std::string graph = "gnp";  // dsp / clique only
  int k = 1;                  // dsp budget
  int t = 3;                  // clique size
};

/// Dispatches on kind. For graph kinds the random graph uses qkp.n and
/// qkp.density.
inline PiqpInstance generate(const GenerateParams& prm, std::uint64_t seed) {
  switch (prm.kind) {
    case InstanceKind::kQkp:
      return generate_qkp(prm.qkp, seed);
    case InstanceKind::kDsp: {
      auto inst = generate_dsp(make_graph(prm.graph, prm.qkp.n, prm.qkp.density, seed), prm.k);
      inst.meta["graph"] = prm.graph;
      inst.meta["seed"] = seed;
      return inst;
    }
    case InstanceKind::kClique: {
      auto inst = generate_clique(make_graph(prm.graph, prm.qkp.n, prm.qkp.density, seed), prm.t);
      inst.meta["graph"] = prm.graph;
      inst.meta["seed"] = seed;
      return inst;
    }
  }
  throw InputError("unknown instance kind");
}

}  // namespace piqp

#endif  // PIQP_GENERATE_HPP_

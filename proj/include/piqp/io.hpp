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

// JSON instance files:
//
//   {"n": int, "p": int, "B": [[int]], "c": [int], "A": [[int]],
//    "budgets": [int], "meta": {...}}
//
// "B" may be replaced by a sparse "edges": [[i, j, b], ...] list, which is
// expanded to the full symmetric matrix on read. Files for the standalone
// knapsack command use the same schema without B.

#ifndef PIQP_IO_HPP_
#define PIQP_IO_HPP_

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "piqp/instance.hpp"

namespace piqp {

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return j.at(name);
}

inline std::int64_t as_int(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

inline std::vector<std::int64_t> as_int_vector(const nlohmann::json& v,
                                               const std::string& where,
                                               std::size_t expected) {
  if (!v.is_array()) throw InputError(where + ": expected an array");
  if (v.size() != expected) {
    throw InputError(where + ": expected " + std::to_string(expected) +
                     " entries, found " + std::to_string(v.size()));
  }
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(as_int(v[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

inline Matrix<std::int64_t> as_int_matrix(const nlohmann::json& v, const std::string& where,
                                          std::size_t rows, std::size_t cols) {
  if (!v.is_array()) throw InputError(where + ": expected an array of rows");
  if (v.size() != rows) {
    throw InputError(where + ": expected " + std::to_string(rows) + " rows, found " +
                     std::to_string(v.size()));
  }
  Matrix<std::int64_t> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = as_int_vector(v[r], where + "[" + std::to_string(r) + "]", cols);
    std::copy(row.begin(), row.end(), m.row(r).begin());
  }
  return m;
}

inline nlohmann::json matrix_to_json(const Matrix<std::int64_t>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<std::int64_t>(row.begin(), row.end()));
  }
  return rows;
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(origin + ": " + e.what());
  }
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Reads n, p, c, A, budgets and meta. B is left to the caller.
inline PiqpInstance parse_linear_part(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("top level must be a JSON object");
  PiqpInstance inst;
  inst.n = static_cast<int>(as_int(require_field(j, "n"), "n"));
  inst.p = static_cast<int>(as_int(require_field(j, "p"), "p"));
  if (inst.n < 0) throw InputError("n: must be nonnegative");
  if (inst.p < 1) throw InputError("p: at least one constraint is required");
  const auto n = static_cast<std::size_t>(inst.n);
  const auto p = static_cast<std::size_t>(inst.p);
  if (j.contains("c")) {
    inst.c = as_int_vector(j.at("c"), "c", n);
  } else {
    inst.c.assign(n, 0);
  }
  inst.A = as_int_matrix(require_field(j, "A"), "A", p, n);
  inst.budgets = as_int_vector(require_field(j, "budgets"), "budgets", p);
  if (j.contains("meta")) inst.meta = j.at("meta");
  return inst;
}

inline void reject_invalid(const PiqpInstance& inst) {
  const auto v = validate(inst);
  if (!v.empty()) {
    std::string msg = "instance rejected:";
    for (const auto& e : v) msg += "\n  " + to_string(e);
    throw InputError(msg);
  }
}

}  // namespace detail

inline PiqpInstance instance_from_json(const nlohmann::json& j) {
  PiqpInstance inst = detail::parse_linear_part(j);
  const auto n = static_cast<std::size_t>(inst.n);
  if (j.contains("B")) {
    inst.B = detail::as_int_matrix(j.at("B"), "B", n, n);
  } else if (j.contains("edges")) {
    inst.B = Matrix<std::int64_t>(n, n, 0);
    const auto& edges = j.at("edges");
    if (!edges.is_array()) throw InputError("edges: expected an array");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const std::string where = "edges[" + std::to_string(k) + "]";
      const auto e = detail::as_int_vector(edges[k], where, 3);
      if (e[0] < 0 || e[1] < 0 || e[0] >= inst.n || e[1] >= inst.n) {
        throw InputError(where + ": vertex index out of range");
      }
      if (e[0] == e[1]) throw InputError(where + ": self-loops are not allowed");
      if (inst.B(e[0], e[1]) != 0) throw InputError(where + ": duplicate edge");
      inst.set_edge(static_cast<int>(e[0]), static_cast<int>(e[1]), e[2]);
    }
  } else {
    throw InputError("missing field 'B' (or 'edges')");
  }
  detail::reject_invalid(inst);
  return inst;
}

inline nlohmann::ordered_json instance_to_json(const PiqpInstance& inst) {
  nlohmann::ordered_json j;
  j["n"] = inst.n;
  j["p"] = inst.p;
  j["B"] = detail::matrix_to_json(inst.B);
  j["c"] = inst.c;
  j["A"] = detail::matrix_to_json(inst.A);
  j["budgets"] = inst.budgets;
  j["meta"] = inst.meta;
  return j;
}

/// Serializes with a fixed key order so equal instances give equal bytes.
inline std::string dump_instance(const PiqpInstance& inst) {
  return instance_to_json(inst).dump() + "\n";
}

inline PiqpInstance parse_instance(const std::string& text,
                                   const std::string& origin = "<string>") {
  return instance_from_json(detail::parse_json_text(text, origin));
}

inline PiqpInstance read_instance(const std::string& path) {
  try {
    return parse_instance(detail::slurp(path), path);
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + what);
  }
}

inline void write_instance(const PiqpInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << dump_instance(inst);
}

/// Linear instance (no B) for the standalone knapsack command; B is zero.
inline PiqpInstance parse_linear_instance(const std::string& text,
                                          const std::string& origin = "<string>") {
  const auto j = detail::parse_json_text(text, origin);
  PiqpInstance inst = detail::parse_linear_part(j);
  inst.B = Matrix<std::int64_t>(inst.n, inst.n, 0);
  detail::reject_invalid(inst);
  return inst;
}

}  // namespace piqp

#endif  // PIQP_IO_HPP_

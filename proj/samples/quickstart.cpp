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

// Builds a small instance in code, solves it, and checks the answer against
// exhaustive search.

#include <iostream>

#include "piqp/piqp.hpp"

int main() {
  // Four items, one budget of 7. Items 0-1-2 form a triangle of benefits.
  auto inst = piqp::PiqpInstance::zeros(4, 1, 7);
  inst.set_edge(0, 1, 5);
  inst.set_edge(1, 2, 4);
  inst.set_edge(0, 2, 3);
  inst.set_edge(2, 3, 6);
  inst.c = {0, 1, 0, 2};
  inst.A(0, 0) = 3;
  inst.A(0, 1) = 2;
  inst.A(0, 2) = 2;
  inst.A(0, 3) = 4;

  piqp::AutoConfig cfg;
  cfg.greedy.t = 2;
  cfg.rounding.seed = 42;
  const auto report = piqp::solve_auto(inst, cfg);
  const auto exact = piqp::brute_force(inst);

  std::cout << piqp::report_to_json(report).dump(2) << "\n";
  std::cout << "solver " << report.solution.objective() << " via " << report.strategy
            << ", optimum " << exact.optimum << "\n";
  return report.solution.objective() <= exact.optimum ? 0 : 1;
}

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

#ifndef PIQP_PIQP_HPP_
#define PIQP_PIQP_HPP_

#include "piqp/bench.hpp"
#include "piqp/generate.hpp"
#include "piqp/greedy.hpp"
#include "piqp/instance.hpp"
#include "piqp/io.hpp"
#include "piqp/matrix.hpp"
#include "piqp/mkp.hpp"
#include "piqp/oracle.hpp"
#include "piqp/relaxation.hpp"
#include "piqp/rounding.hpp"
#include "piqp/solve.hpp"

#endif  // PIQP_PIQP_HPP_

// Copyright 2026 The simgood Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <limits>

#include "simgood/linalg.hpp"

namespace simgood {

// minimize c^T x  subject to  A x = b,  lower <= x <= upper.
// Bounds may be infinite; a variable with both bounds infinite is free.
struct LpProblem {
  Matrix a;
  Vector b;
  Vector c;
  Vector lower;
  Vector upper;
  // Optional starting values for the nonbasic variables; clamped to bounds.
  // Empty starts every variable at a finite bound, or 0 when free.
  Vector start;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* lp_status_name(LpStatus status);

struct LpOptions {
  std::size_t max_iters = 200000;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  std::size_t refactor_every = 64;
  // Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_limit = 50;
};

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  Vector x;
  double objective = 0.0;
  Vector duals;          // y with c_B^T = y^T B
  Vector reduced_costs;  // c - A^T y
  std::size_t iterations = 0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Two-phase bounded-variable revised simplex with an explicit dense basis
// inverse. Meant for problems with few rows; columns may be many.
LpResult solve_lp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace simgood

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "simgood/error.hpp"
#include "simgood/lp.hpp"
#include "simgood/rng.hpp"

using namespace simgood;

namespace {

// max x1 + x2  s.t.  x1 + 2 x2 <= 4,  3 x1 + x2 <= 6,  x >= 0  (slacks appended)
LpProblem two_constraint_lp() {
  LpProblem p;
  p.a = Matrix{{1, 2, 1, 0}, {3, 1, 0, 1}};
  p.b = {4, 6};
  p.c = {-1, -1, 0, 0};
  p.lower = {0, 0, 0, 0};
  p.upper = {kInf, kInf, kInf, kInf};
  return p;
}

// Feasibility, bound-aware reduced cost signs and the duality identity.
void check_kkt(const LpProblem& p, const LpResult& r, double tol) {
  const std::size_t m = p.a.rows(), n = p.a.cols();
  REQUIRE(r.status == LpStatus::kOptimal);
  REQUIRE(r.x.size() == n);
  REQUIRE(r.duals.size() == m);
  for (std::size_t i = 0; i < m; ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) ax += p.a(i, j) * r.x[j];
    CHECK(std::abs(ax - p.b[i]) <= tol);
  }
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < m; ++i) dual_obj += p.b[i] * r.duals[i];
  for (std::size_t j = 0; j < n; ++j) {
    CHECK(r.x[j] >= p.lower[j] - tol);
    CHECK(r.x[j] <= p.upper[j] + tol);
    double rc = p.c[j];
    for (std::size_t i = 0; i < m; ++i) rc -= p.a(i, j) * r.duals[i];
    CHECK(std::abs(rc - r.reduced_costs[j]) <= tol);
    const bool at_lower = std::abs(r.x[j] - p.lower[j]) <= tol;
    const bool at_upper = std::abs(r.x[j] - p.upper[j]) <= tol;
    if (at_lower && !at_upper) CHECK(rc >= -tol);
    if (at_upper && !at_lower) CHECK(rc <= tol);
    if (!at_lower && !at_upper) CHECK(std::abs(rc) <= tol);
    dual_obj += rc * r.x[j];
  }
  double primal = 0.0;
  for (std::size_t j = 0; j < n; ++j) primal += p.c[j] * r.x[j];
  CHECK(std::abs(primal - r.objective) <= tol);
  CHECK(std::abs(primal - dual_obj) <= tol * 10);
}

}  // namespace

TEST_CASE("two-constraint example") {
  const LpProblem p = two_constraint_lp();
  const LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.x[0] == doctest::Approx(1.6));
  CHECK(r.x[1] == doctest::Approx(1.2));
  CHECK(r.objective == doctest::Approx(-2.8));
  CHECK(r.duals[0] == doctest::Approx(-0.4));
  CHECK(r.duals[1] == doctest::Approx(-0.2));
  check_kkt(p, r, 1e-9);
}

TEST_CASE("upper bounds on structurals") {
  LpProblem p = two_constraint_lp();
  p.upper[0] = 1.0;
  const LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(1.5));
  check_kkt(p, r, 1e-9);
}

TEST_CASE("infeasible and unbounded problems") {
  LpProblem infeasible;
  infeasible.a = Matrix{{1, 1}};
  infeasible.b = {-1};
  infeasible.c = {1, 1};
  infeasible.lower = {0, 0};
  infeasible.upper = {kInf, kInf};
  CHECK(solve_lp(infeasible).status == LpStatus::kInfeasible);

  LpProblem unbounded;
  unbounded.a = Matrix{{1, -1}};
  unbounded.b = {0};
  unbounded.c = {-1, 0};
  unbounded.lower = {0, 0};
  unbounded.upper = {kInf, kInf};
  CHECK(solve_lp(unbounded).status == LpStatus::kUnbounded);
  CHECK(std::string(lp_status_name(LpStatus::kUnbounded)).size() > 0);
}

TEST_CASE("free variables") {
  LpProblem p;
  p.a = Matrix{{1, -1}};
  p.b = {0};
  p.c = {1, 0};
  p.lower = {-kInf, 2};
  p.upper = {kInf, 5};
  const LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.x[0] == doctest::Approx(2.0));
  CHECK(r.objective == doctest::Approx(2.0));
  check_kkt(p, r, 1e-9);

  p.c = {-1, 0};
  const LpResult top = solve_lp(p);
  CHECK(top.x[0] == doctest::Approx(5.0));
}

TEST_CASE("start values do not change the optimum") {
  LpProblem p = two_constraint_lp();
  p.upper = {3, 3, 10, 10};
  p.start = {2.5, 0.5, 7.0, 100.0};
  const LpResult r = solve_lp(p);
  check_kkt(p, r, 1e-9);
  CHECK(r.objective == doctest::Approx(-2.8));
}

TEST_CASE("iteration limit is reported") {
  LpOptions o;
  o.max_iters = 0;
  CHECK(solve_lp(two_constraint_lp(), o).status == LpStatus::kIterationLimit);
}

TEST_CASE("shape and bound errors") {
  LpProblem p = two_constraint_lp();
  p.b = {1};
  CHECK_THROWS_AS(solve_lp(p), Error);
  p = two_constraint_lp();
  p.lower[1] = 5;
  p.upper[1] = 1;
  CHECK_THROWS_AS(solve_lp(p), Error);
}

TEST_CASE("random feasible problems satisfy optimality conditions") {
  Rng rng(71);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t m = 1 + rng.uniform_index(8);
    const std::size_t n = m + 1 + rng.uniform_index(30);
    LpProblem p;
    p.a = Matrix(m, n);
    for (double& v : p.a.entries()) v = rng.uniform() < 0.3 ? 0.0 : 2 * rng.uniform() - 1;
    p.c.resize(n);
    p.lower.resize(n);
    p.upper.resize(n);
    Vector x0(n);
    for (std::size_t j = 0; j < n; ++j) {
      p.c[j] = 2 * rng.uniform() - 1;
      const int kind = static_cast<int>(rng.uniform_index(3));
      p.lower[j] = kind == 2 ? -1.0 - rng.uniform() : 0.0;
      p.upper[j] = kind == 0 ? 1.0 : 1.0 + 2 * rng.uniform();
      x0[j] = p.lower[j] + rng.uniform() * (p.upper[j] - p.lower[j]);
    }
    p.b = multiply(p.a, x0);
    const LpResult r = solve_lp(p);
    check_kkt(p, r, 1e-8);
    double c_x0 = 0.0;
    for (std::size_t j = 0; j < n; ++j) c_x0 += p.c[j] * x0[j];
    CHECK(r.objective <= c_x0 + 1e-9);
  }
}

TEST_CASE("degenerate problem terminates") {
  // Many redundant constraints through the same vertex.
  LpProblem p;
  const std::size_t m = 6;
  p.a = Matrix(m, 2 + m);
  for (std::size_t i = 0; i < m; ++i) {
    p.a(i, 0) = 1.0;
    p.a(i, 1) = static_cast<double>(i);
    p.a(i, 2 + i) = 1.0;
  }
  p.b.assign(m, 0.0);
  p.c = Vector(2 + m, 0.0);
  p.c[0] = -1.0;
  p.c[1] = -1.0;
  p.lower.assign(2 + m, 0.0);
  p.upper.assign(2 + m, kInf);
  const LpResult r = solve_lp(p);
  check_kkt(p, r, 1e-9);
  CHECK(r.objective == doctest::Approx(0.0));
}

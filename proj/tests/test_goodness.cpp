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
#include "simgood/goodness.hpp"
#include "test_util.hpp"

using namespace simgood;

namespace {

ReasonableSet reasonable_of(std::vector<LabeledPoint> points) {
  ReasonableSet r;
  r.points = std::move(points);
  r.tau_hat = 1.0;
  return r;
}

ReasonableSet random_reasonable(Rng& rng, std::size_t n, std::size_t d) {
  ReasonableSet r;
  for (std::size_t k = 0; k < n; ++k) {
    r.points.push_back({testing::random_in_ball(rng, d), rng.uniform() < 0.5 ? 1 : -1});
  }
  return r;
}

// Average signed similarity to R, summed pair by pair.
double average_similarity(const Matrix& a, const Vector& x, const ReasonableSet& r) {
  double s = 0.0;
  for (const auto& p : r.points) {
    double k = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j) k += x[i] * a(i, j) * p.features[j];
    }
    s += p.label * k;
  }
  return s / static_cast<double>(r.points.size());
}

}  // namespace

TEST_CASE("v_loss examples") {
  const LabeledPoint z{{1.0, 0.0}, 1};
  const ReasonableSet same = reasonable_of({{{1.0, 0.0}, 1}});
  const ReasonableSet flipped = reasonable_of({{{1.0, 0.0}, -1}});
  CHECK(v_loss(Matrix(2, 2), z, same, 0.3) == 1.0);
  CHECK(v_loss(Matrix::identity(2), z, same, 0.5) == 0.0);
  CHECK(v_loss(Matrix::identity(2), z, flipped, 0.5) == doctest::Approx(3.0));
  CHECK_THROWS_AS(v_loss(Matrix::identity(2), z, same, 0.0), Error);
  CHECK_THROWS_AS(v_loss(Matrix::identity(3), z, same, 0.5), Error);
}

TEST_CASE("signed_mean examples") {
  CHECK(signed_mean(reasonable_of({{{1, 0}, 1}, {{1, 0}, -1}})) == Vector{0.0, 0.0});
  CHECK(signed_mean(reasonable_of({{{1, 0}, 1}})) == Vector{1.0, 0.0});
  CHECK(signed_mean(reasonable_of({{{1, 0}, 1}, {{0, 1}, -1}})) == Vector{0.5, -0.5});
}

TEST_CASE("empirical_goodness examples") {
  Dataset one;
  one.dim = 2;
  one.points = {{{1.0, 0.0}, 1}};
  const ReasonableSet r = reasonable_of(one.points);
  const auto zero = empirical_goodness(Matrix(2, 2), one, r, 0.5);
  CHECK(zero.epsilon_hat == 1.0);
  const auto id = empirical_goodness(Matrix::identity(2), one, r, 0.5);
  CHECK(id.epsilon_hat == 0.0);
  CHECK(id.violation_rate == 0.0);
  CHECK(id.epsilon_normalized == 0.0);
}

TEST_CASE("empirical_goodness matches a pairwise double loop") {
  Rng rng(41);
  for (int rep = 0; rep < 5; ++rep) {
    const Dataset t = testing::random_dataset(rng, 10, 3);
    const ReasonableSet r = make_reasonable_set(t, 1.0);
    const Matrix a = testing::random_in_frobenius_ball(rng, 3);
    const double gamma = 0.05 + rng.uniform();
    double total = 0.0;
    std::size_t violations = 0;
    for (const auto& p : t.points) {
      const double m = p.label * average_similarity(a, p.features, r) / gamma;
      total += std::max(0.0, 1.0 - m);
      violations += m < 0.0;
    }
    const auto g = empirical_goodness(a, t, r, gamma);
    CHECK(g.epsilon_hat == doctest::Approx(total / 10.0).epsilon(1e-12));
    CHECK(g.violation_rate == doctest::Approx(violations / 10.0));
    CHECK(g.violation_rate <= g.positive_loss_rate);
    CHECK(g.epsilon_normalized == doctest::Approx(g.epsilon_hat / (1.0 + 1.0 / gamma)));
  }
}

TEST_CASE("reasonable subsets") {
  Rng rng(42);
  const Dataset t = testing::random_dataset(rng, 20, 2);
  const ReasonableSet all = make_reasonable_set(t, 1.0);
  CHECK(all.points.size() == 20);
  CHECK(all.tau_hat == 1.0);
  const ReasonableSet part = make_reasonable_set(t, 0.25, 3);
  CHECK(part.points.size() == 5);
  CHECK(part.tau_hat == doctest::Approx(0.25));
  const ReasonableSet again = make_reasonable_set(t, 0.25, 3);
  for (std::size_t i = 0; i < 5; ++i) CHECK(part.points[i].features == again.points[i].features);
  CHECK_THROWS_AS(make_reasonable_set(t, 0.0), Error);
  CHECK_THROWS_AS(make_reasonable_set(t, 1.5), Error);
}

TEST_CASE("stability bound examples") {
  const auto unit = stability_bound(0.0, 10000, 1.0, 1.0, 1.0, 0.05);
  CHECK(unit.kappa == 3.0);
  const double oracle = 3.0 / 10000.0 + 7.0 * std::sqrt(std::log(20.0) / 20000.0);
  CHECK(unit.bound_value == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(std::abs(unit.bound_value - 0.085966) <= 1e-5);
  CHECK(unit.bound_value >= unit.epsilon_T_normalized);

  const auto b = stability_bound(0.2, 500, 0.01, 0.1, 0.5, 0.1);
  CHECK(b.kappa == doctest::Approx((0.5 + 2 * 0.01 * 0.1) / (0.5 * 0.01 * 0.01)));
}

TEST_CASE("stability bound is monotone in N_T and beta") {
  for (std::size_t n : {2u, 10u, 100u, 1000u, 100000u}) {
    for (double beta : {1e-3, 1e-1, 1.0}) {
      const auto small = stability_bound(0.1, n, beta, 0.5, 1.0, 0.05);
      const auto big = stability_bound(0.1, 2 * n, beta, 0.5, 1.0, 0.05);
      CHECK(big.bound_value < small.bound_value);
      const auto more_reg = stability_bound(0.1, n, 2 * beta, 0.5, 1.0, 0.05);
      CHECK(more_reg.kappa < small.kappa);
      CHECK(more_reg.bound_value < small.bound_value);
    }
  }
}

TEST_CASE("stability bound rejects bad parameters") {
  CHECK_THROWS_AS(stability_bound(0.1, 100, 0.0, 1.0, 1.0, 0.05), Error);
  CHECK_THROWS_AS(stability_bound(0.1, 100, 1.0, -1.0, 1.0, 0.05), Error);
  CHECK_THROWS_AS(stability_bound(0.1, 100, 1.0, 1.0, 0.0, 0.05), Error);
  CHECK_THROWS_AS(stability_bound(0.1, 100, 1.0, 1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(stability_bound(1.5, 100, 1.0, 1.0, 1.0, 0.05), Error);
  CHECK_THROWS_AS(stability_bound(0.1, 1, 1.0, 1.0, 1.0, 0.05), Error);
}

TEST_CASE("similarity and loss properties on random draws") {
  Rng rng(43);
  std::size_t p1 = 0, p2 = 0, p3 = 0, upper = 0, convex = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 1 + rng.uniform_index(6);
    const Matrix a = testing::random_in_frobenius_ball(rng, d);
    const Matrix b = testing::random_in_frobenius_ball(rng, d);
    const Vector x = testing::random_in_ball(rng, d);
    const Vector y = testing::random_in_ball(rng, d);
    const double gamma = 0.01 + rng.uniform();

    p1 += std::abs(bilinear_similarity(a, x, y)) > 1.0 + 1e-12;
    p2 += std::abs(bilinear_similarity(a, x, y) - bilinear_similarity(b, x, y)) >
          frobenius_norm(subtract(a, b)) + 1e-12;

    const LabeledPoint z{x, rng.uniform() < 0.5 ? 1 : -1};
    const ReasonableSet r = random_reasonable(rng, 1 + rng.uniform_index(8), d);
    const ReasonableSet r2 = random_reasonable(rng, 1 + rng.uniform_index(8), d);
    const double lhs = std::abs(v_loss(a, z, r, gamma) - v_loss(b, z, r2, gamma));
    const double rhs =
        std::abs(average_similarity(a, x, r) - average_similarity(b, x, r2)) / gamma;
    p3 += lhs > rhs + 1e-12;
    upper += v_loss(a, z, r, gamma) > 1.0 + 1.0 / gamma + 1e-12;

    const double s = rng.uniform();
    convex += v_loss(lerp(a, b, s), z, r, gamma) >
              s * v_loss(a, z, r, gamma) + (1 - s) * v_loss(b, z, r, gamma) + 1e-12;
  }
  CHECK(p1 == 0);
  CHECK(p2 == 0);
  CHECK(p3 == 0);
  CHECK(upper == 0);
  CHECK(convex == 0);
}

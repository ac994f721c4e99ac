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

#include "simgood/goodness.hpp"

#include <algorithm>
#include <cmath>

#include "simgood/error.hpp"
#include "simgood/rng.hpp"

namespace simgood {
namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::kInvalidParameter, "gamma must be > 0");
}

}  // namespace

ReasonableSet make_reasonable_set(const Dataset& train, double tau_hat, std::uint64_t seed) {
  if (!(tau_hat > 0.0 && tau_hat <= 1.0)) {
    throw Error(ErrorKind::kInvalidParameter, "tau_hat must lie in (0, 1]");
  }
  if (train.empty()) throw Error(ErrorKind::kTooSmall, "reasonable set from empty training set");
  ReasonableSet r;
  if (tau_hat == 1.0) {
    r.points = train.points;
  } else {
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(tau_hat * static_cast<double>(train.size()))));
    Rng rng(seed);
    const auto perm = rng_shuffle(rng, train.size());
    for (std::size_t i = 0; i < count; ++i) r.points.push_back(train.points[perm[i]]);
  }
  r.tau_hat = static_cast<double>(r.points.size()) / static_cast<double>(train.size());
  return r;
}

Vector signed_mean(const ReasonableSet& reasonable) {
  if (reasonable.points.empty()) throw Error(ErrorKind::kTooSmall, "empty reasonable set");
  Vector mu(reasonable.points.front().features.size(), 0.0);
  for (const auto& p : reasonable.points) {
    if (p.features.size() != mu.size()) {
      throw Error(ErrorKind::kDimensionMismatch, "reasonable points differ in dimension");
    }
    for (std::size_t j = 0; j < mu.size(); ++j) mu[j] += p.label * p.features[j];
  }
  for (double& v : mu) v /= static_cast<double>(reasonable.points.size());
  return mu;
}

double bilinear_similarity(const Matrix& a, std::span<const double> x, std::span<const double> y) {
  return bilinear_form(x, a, y);
}

// sum_k l_k x^T A x_k = x^T A (N_R mu), so one matrix-vector product covers R.
double v_loss(const Matrix& a, const LabeledPoint& z, const ReasonableSet& reasonable, double gamma) {
  check_gamma(gamma);
  const Vector mu = signed_mean(reasonable);
  const double g = bilinear_form(z.features, a, mu);
  return std::max(0.0, 1.0 - z.label * g / gamma);
}

GoodnessReport empirical_goodness(const Matrix& a, const Dataset& train,
                                  const ReasonableSet& reasonable, double gamma) {
  check_gamma(gamma);
  if (train.empty()) throw Error(ErrorKind::kTooSmall, "empirical_goodness on empty set");
  const Vector a_mu = multiply(a, signed_mean(reasonable));
  GoodnessReport report;
  report.gamma = gamma;
  report.tau_hat = reasonable.tau_hat;
  std::size_t violations = 0;
  std::size_t positive = 0;
  double total = 0.0;
  for (const auto& p : train.points) {
    const double margin = p.label * dot(p.features, a_mu) / gamma;
    const double loss = std::max(0.0, 1.0 - margin);
    total += loss;
    if (margin < 0.0) ++violations;
    if (loss > 0.0) ++positive;
  }
  const auto n = static_cast<double>(train.size());
  report.epsilon_hat = total / n;
  report.epsilon_normalized = report.epsilon_hat / (1.0 + 1.0 / gamma);
  report.violation_rate = static_cast<double>(violations) / n;
  report.positive_loss_rate = static_cast<double>(positive) / n;
  return report;
}

BoundReport stability_bound(double epsilon_T_normalized, std::size_t n_train, double beta,
                            double gamma, double tau_hat, double delta) {
  if (!(beta > 0.0) || !(gamma > 0.0) || !(tau_hat > 0.0 && tau_hat <= 1.0)) {
    throw Error(ErrorKind::kInvalidParameter, "beta, gamma must be > 0 and tau_hat in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::kInvalidParameter, "delta must lie in (0, 1)");
  if (n_train < 2) throw Error(ErrorKind::kInvalidParameter, "bound needs N_T > 1");
  if (!(epsilon_T_normalized >= 0.0 && epsilon_T_normalized <= 1.0)) {
    throw Error(ErrorKind::kInvalidParameter, "normalized epsilon_T must lie in [0, 1]");
  }
  BoundReport report;
  report.kappa = (tau_hat + 2.0 * beta * gamma) / (tau_hat * beta * gamma * gamma);
  const auto n = static_cast<double>(n_train);
  report.bound_value = epsilon_T_normalized + report.kappa / n +
                       (2.0 * report.kappa + 1.0) * std::sqrt(std::log(1.0 / delta) / (2.0 * n));
  report.delta = delta;
  report.n_train = n_train;
  report.epsilon_T_normalized = epsilon_T_normalized;
  return report;
}

}  // namespace simgood

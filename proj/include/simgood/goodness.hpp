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
#include <cstdint>
#include <span>

#include "simgood/data.hpp"
#include "simgood/linalg.hpp"

namespace simgood {

// Reference points for the goodness criterion, drawn from a training set.
struct ReasonableSet {
  std::vector<LabeledPoint> points;
  double tau_hat = 1.0;  // |R| / N_T
};

// tau_hat = 1 takes all of T; smaller values draw floor(tau_hat * N_T) points
// (at least one) without replacement.
ReasonableSet make_reasonable_set(const Dataset& train, double tau_hat, std::uint64_t seed = 0);

// (1 / N_R) sum_k l_k x_k
Vector signed_mean(const ReasonableSet& reasonable);

// x^T A x'
double bilinear_similarity(const Matrix& a, std::span<const double> x, std::span<const double> y);

// [1 - l / (gamma N_R) sum_k l_k x^T A x_k]_+
double v_loss(const Matrix& a, const LabeledPoint& z, const ReasonableSet& reasonable, double gamma);

struct GoodnessReport {
  double epsilon_hat = 0.0;             // mean goodness hinge loss over T
  double epsilon_normalized = 0.0;      // epsilon_hat / (1 + 1/gamma)
  double violation_rate = 0.0;          // fraction with l * g(x) < 0
  double positive_loss_rate = 0.0;      // fraction with nonzero hinge loss
  double gamma = 0.0;
  double tau_hat = 0.0;
};

GoodnessReport empirical_goodness(const Matrix& a, const Dataset& train,
                                  const ReasonableSet& reasonable, double gamma);

struct BoundReport {
  double kappa = 0.0;
  double bound_value = 0.0;
  double delta = 0.0;
  std::size_t n_train = 0;
  double epsilon_T_normalized = 0.0;
};

// Uniform-stability generalization bound on the normalized goodness loss:
//   kappa = (tau + 2 beta gamma) / (tau beta gamma^2)
//   bound = eps_T + kappa / N_T + (2 kappa + 1) sqrt(ln(1/delta) / (2 N_T))
// Throws InvalidParameter unless beta, gamma, tau_hat > 0, delta in (0, 1),
// N_T >= 2 and eps_T in [0, 1].
BoundReport stability_bound(double epsilon_T_normalized, std::size_t n_train, double beta,
                            double gamma, double tau_hat, double delta);

}  // namespace simgood

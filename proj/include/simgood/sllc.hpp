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
#include <vector>

#include "simgood/data.hpp"
#include "simgood/goodness.hpp"
#include "simgood/linalg.hpp"

namespace simgood {

struct SllcConfig {
  double beta = 1e-3;
  double gamma = 1e-2;
  // Interior-point iteration cap.
  std::size_t max_iters = 200;
  // Stop once primal - dual <= gap_tol * max(1, primal).
  double gap_tol = 1e-9;
  // Width of the quadratic band of the smoothed hinge; only read by
  // sllc_objective / sllc_gradient, the solvers always use the exact hinge.
  double smoothing_mu = 0.0;
  std::uint64_t seed = 0;  // draw of the reasonable subset when tau_hat < 1
  // Rescale A to unit Frobenius norm when the solution exceeds it.
  bool enforce_unit_norm = true;
  // Throw NoConvergence instead of flagging the model when max_iters runs out.
  bool require_convergence = false;
};

struct SimilarityModel {
  Matrix a;
  double gamma = 0.0;
  double beta = 0.0;
  double tau_hat = 1.0;
  std::size_t n_reasonable = 0;
  Vector signed_mean;

  double objective_value = 0.0;  // at the returned A
  double raw_objective = 0.0;    // before unit-norm rescaling
  double frobenius_norm_a = 0.0;
  double duality_gap = 0.0;
  std::size_t iterations = 0;
  bool rescaled = false;
  bool degenerate = false;  // |mu| <= 1e-12, A = 0
  bool converged = true;

  std::vector<double> objective_trace;  // primal objective per iteration
  std::vector<double> dual_trace;       // dual lower bound per iteration
};

// Smoothed hinge h(m): 0 for m >= 1, (1 - m)^2 / (2 mu) on [1 - mu, 1],
// 1 - m - mu / 2 below; mu = 0 is the exact hinge [1 - m]_+.
double smoothed_hinge(double margin, double smoothing_mu);

// eps_T(A) + beta |A|_F^2 with the loss replaced by smoothed_hinge.
double sllc_objective(const Matrix& a, const Dataset& train, std::span<const double> mu,
                      double gamma, double beta, double smoothing_mu = 0.0);
double sllc_objective(const Matrix& a, const Dataset& train, const ReasonableSet& reasonable,
                      double gamma, double beta, double smoothing_mu = 0.0);

// Gradient of sllc_objective (a subgradient when smoothing_mu = 0).
Matrix sllc_gradient(const Matrix& a, const Dataset& train, std::span<const double> mu,
                     double gamma, double beta, double smoothing_mu);

// A mu mu^T / |mu|^2
Matrix rank_one_projection(const Matrix& a, std::span<const double> mu);

// Interior-point method on the d x d matrix problem with vec(A) as the
// variable; Newton systems are d^2 x d^2, so meant for small d.
SimilarityModel solve_sllc_full(const Dataset& train, const ReasonableSet& reasonable,
                                const SllcConfig& config);

// The loss sees A only through w = A mu and the smallest-norm A with A mu = w
// is w mu^T / |mu|^2, so the program reduces to
//   min_w (1/N) sum [1 - l_i w.x_i / gamma]_+ + (beta / |mu|^2) |w|^2.
// Solved by the same interior-point method with d x d Newton systems, which
// stays accurate when beta gamma^2 is tiny; A is rebuilt as an outer product.
SimilarityModel solve_sllc_reduced(const Dataset& train, const ReasonableSet& reasonable,
                                   const SllcConfig& config);

}  // namespace simgood

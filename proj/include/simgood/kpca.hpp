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
#include <span>

#include "simgood/data.hpp"
#include "simgood/eigen.hpp"
#include "simgood/linalg.hpp"

namespace simgood {

// exp(-|x - y|^2 / (2 sigma^2))
double gaussian_kernel(std::span<const double> x, std::span<const double> y, double sigma);

// Mean Euclidean distance over all unordered pairs. Throws DegenerateData
// when the mean is below 1e-12.
double sigma_heuristic(const Dataset& train);

// Number of retained components for d input features: 4d when d <= cutoff,
// otherwise 3d. An explicit count overrides both multipliers.
struct ComponentPolicy {
  std::size_t low_dim_cutoff = 4;
  std::size_t low_dim_multiplier = 4;
  std::size_t multiplier = 3;
  std::size_t explicit_count = 0;

  std::size_t components_for(std::size_t d) const;
};

struct KpcaModel {
  Matrix training_points;  // n x input dim
  double sigma = 1.0;
  Vector kernel_row_means;
  double kernel_grand_mean = 0.0;
  Vector eigenvalues;  // retained, descending, all > zero threshold
  Matrix eigenvectors;  // n x n_components, unit columns
  std::size_t n_components = 0;
  double norm_scale = 1.0;

  std::size_t input_dim() const { return training_points.cols(); }
  std::size_t n_training() const { return training_points.rows(); }
};

struct KpcaOptions {
  double sigma = 0.0;  // 0 selects sigma_heuristic
  double zero_eigen_ratio = 1e-12;
  JacobiOptions jacobi;
  // Kernels with more rows than this, and fewer requested components than a
  // quarter of the rows, take the leading-subspace route instead of a full
  // Jacobi decomposition.
  std::size_t dense_limit = 256;
  SubspaceOptions subspace;
};

Matrix gaussian_kernel_matrix(const Matrix& points, double sigma);
// K - 1K - K1 + 1K1 with 1 the n x n matrix of 1/n.
Matrix center_kernel(const Matrix& k);

// Throws DegenerateData, NoConvergence.
KpcaModel kpca_fit(const Dataset& train, std::size_t n_components, const KpcaOptions& options = {});

// Coordinates in the retained eigenspace before norm_scale division.
Vector kpca_project_raw(const KpcaModel& model, std::span<const double> x);
// Divided by norm_scale and clipped to unit norm.
Vector kpca_project(const KpcaModel& model, std::span<const double> x);
Dataset kpca_transform(const KpcaModel& model, const Dataset& ds);

}  // namespace simgood

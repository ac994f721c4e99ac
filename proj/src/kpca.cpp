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

#include "simgood/kpca.hpp"

#include <algorithm>
#include <cmath>

#include "simgood/error.hpp"
#include "simgood/simd.hpp"

namespace simgood {
namespace {

Matrix points_matrix(const Dataset& ds) {
  Matrix m(ds.size(), ds.dim);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& f = ds.points[i].features;
    if (f.size() != ds.dim) throw Error(ErrorKind::kDimensionMismatch, "ragged dataset");
    std::copy(f.begin(), f.end(), m.row(i).begin());
  }
  return m;
}

}  // namespace

double gaussian_kernel(std::span<const double> x, std::span<const double> y, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::kInvalidParameter, "gaussian_kernel: sigma <= 0");
  return std::exp(-squared_distance(x, y) / (2.0 * sigma * sigma));
}

double sigma_heuristic(const Dataset& train) {
  const std::size_t n = train.size();
  if (n < 2) throw Error(ErrorKind::kTooSmall, "sigma_heuristic needs >= 2 points");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      row += std::sqrt(squared_distance(train.points[i].features, train.points[j].features));
    }
    total += row;
  }
  const double mean = total / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
  if (mean < 1e-12) throw Error(ErrorKind::kDegenerateData, "all training points coincide");
  return mean;
}

std::size_t ComponentPolicy::components_for(std::size_t d) const {
  if (explicit_count != 0) return explicit_count;
  return d * (d <= low_dim_cutoff ? low_dim_multiplier : multiplier);
}

Matrix gaussian_kernel_matrix(const Matrix& points, double sigma) {
  const std::size_t n = points.rows();
  const double inv = 1.0 / (2.0 * sigma * sigma);
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::exp(-simd::squared_distance(points.row(i), points.row(j)) * inv);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

Matrix center_kernel(const Matrix& k) {
  const std::size_t n = k.rows();
  Vector means(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) means[j] += k(i, j);
  }
  for (double& m : means) {
    m /= static_cast<double>(n);
    grand += m;
  }
  grand /= static_cast<double>(n);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = k(i, j) - means[i] - means[j] + grand;
  }
  return out;
}

KpcaModel kpca_fit(const Dataset& train, std::size_t n_components, const KpcaOptions& options) {
  if (n_components == 0) throw Error(ErrorKind::kInvalidParameter, "kpca_fit: n_components = 0");
  KpcaModel model;
  model.training_points = points_matrix(train);
  model.sigma = options.sigma > 0.0 ? options.sigma : sigma_heuristic(train);
  const std::size_t n = train.size();

  const Matrix k = gaussian_kernel_matrix(model.training_points, model.sigma);
  model.kernel_row_means.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) model.kernel_row_means[i] += k(i, j);
  }
  double grand = 0.0;
  for (double& m : model.kernel_row_means) {
    m /= static_cast<double>(n);
    grand += m;
  }
  model.kernel_grand_mean = grand / static_cast<double>(n);

  const Matrix centered = center_kernel(k);
  const bool leading_only = n > options.dense_limit && 4 * n_components < n;
  const EigenDecomposition eig = leading_only ? sym_eig_top(centered, n_components, options.subspace)
                                              : sym_eig(centered, options.jacobi);
  const double lambda_max = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  const double floor = options.zero_eigen_ratio * lambda_max;
  std::size_t retained = 0;
  while (retained < std::min(n_components, eig.eigenvalues.size()) && lambda_max > 0.0 &&
         eig.eigenvalues[retained] > floor) {
    ++retained;
  }
  if (retained == 0) throw Error(ErrorKind::kDegenerateData, "centered kernel has no positive spectrum");

  model.n_components = retained;
  model.eigenvalues.assign(eig.eigenvalues.begin(), eig.eigenvalues.begin() + static_cast<std::ptrdiff_t>(retained));
  model.eigenvectors = Matrix(n, retained);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < retained; ++r) model.eigenvectors(i, r) = eig.eigenvectors(i, r);
  }

  model.norm_scale = 1.0;
  double largest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    largest = std::max(largest, norm2(kpca_project_raw(model, model.training_points.row(i))));
  }
  if (!(largest > 0.0)) throw Error(ErrorKind::kDegenerateData, "projected training data is zero");
  model.norm_scale = largest;
  return model;
}

Vector kpca_project_raw(const KpcaModel& model, std::span<const double> x) {
  if (x.size() != model.input_dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "kpca_project: input dimension");
  }
  const std::size_t n = model.n_training();
  const double inv = 1.0 / (2.0 * model.sigma * model.sigma);
  Vector kx(n);
  double mean = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    kx[l] = std::exp(-simd::squared_distance(x, model.training_points.row(l)) * inv);
    mean += kx[l];
  }
  mean /= static_cast<double>(n);
  Vector out(model.n_components, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    const double centered = kx[l] - mean - model.kernel_row_means[l] + model.kernel_grand_mean;
    simd::axpy(centered, model.eigenvectors.row(l), out);
  }
  for (std::size_t r = 0; r < model.n_components; ++r) out[r] /= std::sqrt(model.eigenvalues[r]);
  return out;
}

Vector kpca_project(const KpcaModel& model, std::span<const double> x) {
  Vector out = kpca_project_raw(model, x);
  for (double& v : out) v /= model.norm_scale;
  const double norm = norm2(out);
  if (norm > 1.0) {
    for (double& v : out) v /= norm;
  }
  return out;
}

Dataset kpca_transform(const KpcaModel& model, const Dataset& ds) {
  Dataset out;
  out.dim = model.n_components;
  out.name = ds.name;
  out.points.reserve(ds.size());
  for (const auto& p : ds.points) out.points.push_back({kpca_project(model, p.features), p.label});
  return out;
}

}  // namespace simgood

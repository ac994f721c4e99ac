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

#include "simgood/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "simgood/error.hpp"
#include "simgood/simd.hpp"

namespace simgood {
namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, std::string(op) + ": shapes differ");
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorKind::kDimensionMismatch, "matrix entry count does not match shape");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::kDimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::kDimensionMismatch, "dot: lengths differ");
  return simd::dot(a, b);
}

double norm2(std::span<const double> v) { return std::sqrt(simd::dot(v, v)); }

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "squared_distance: lengths differ");
  }
  return simd::squared_distance(a, b);
}

double frobenius_norm(const Matrix& m) { return norm2(m.entries()); }

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::kDimensionMismatch, "multiply: inner dims");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik != 0.0) simd::axpy(aik, b.row(k), out_row);
    }
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  }
  return out;
}

Vector multiply(const Matrix& m, std::span<const double> x) {
  if (m.cols() != x.size()) throw Error(ErrorKind::kDimensionMismatch, "matvec: dims");
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = simd::dot(m.row(i), x);
  return out;
}

Vector multiply_transposed(const Matrix& m, std::span<const double> x) {
  if (m.rows() != x.size()) throw Error(ErrorKind::kDimensionMismatch, "matvec^T: dims");
  Vector out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] != 0.0) simd::axpy(x[i], m.row(i), out);
  }
  return out;
}

double bilinear_form(std::span<const double> x, const Matrix& m, std::span<const double> y) {
  if (m.rows() != x.size() || m.cols() != y.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "bilinear_form: dims");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] != 0.0) sum += x[i] * simd::dot(m.row(i), y);
  }
  return sum;
}

Matrix outer(std::span<const double> u, std::span<const double> v) {
  Matrix out(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * v[j];
  }
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "add");
  Matrix out = a;
  simd::axpy(1.0, b.entries(), out.entries());
  return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "subtract");
  Matrix out = a;
  simd::axpy(-1.0, b.entries(), out.entries());
  return out;
}

Matrix scale(const Matrix& m, double factor) {
  Matrix out = m;
  for (double& v : out.entries()) v *= factor;
  return out;
}

Matrix cholesky_factor(Matrix m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorKind::kDimensionMismatch, "cholesky_factor: matrix not square");
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = m(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= m(j, k) * m(j, k);
    if (!(pivot > 0.0)) throw Error(ErrorKind::kNoConvergence, "cholesky_factor: matrix not positive definite");
    pivot = std::sqrt(pivot);
    m(j, j) = pivot;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = m(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= m(i, k) * m(j, k);
      m(i, j) = v / pivot;
    }
    for (std::size_t k = j + 1; k < n; ++k) m(j, k) = 0.0;
  }
  return m;
}

Vector cholesky_solve(const Matrix& l, std::span<const double> b) {
  const std::size_t n = l.rows();
  if (l.cols() != n || b.size() != n) throw Error(ErrorKind::kDimensionMismatch, "cholesky_solve: shape mismatch");
  Vector x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) x[i] -= l(i, k) * x[k];
    x[i] /= l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) x[i] -= l(k, i) * x[k];
    x[i] /= l(i, i);
  }
  return x;
}

Vector solve_spd(Matrix m, std::span<const double> b) {
  if (m.rows() != b.size()) throw Error(ErrorKind::kDimensionMismatch, "solve_spd: shape mismatch");
  return cholesky_solve(cholesky_factor(std::move(m)), b);
}

Matrix lerp(const Matrix& a, const Matrix& b, double t) {
  require_same_shape(a, b, "lerp");
  Matrix out(a.rows(), a.cols());
  auto oa = a.entries();
  auto ob = b.entries();
  auto oo = out.entries();
  for (std::size_t i = 0; i < oo.size(); ++i) oo[i] = t * oa[i] + (1.0 - t) * ob[i];
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
  return worst;
}

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace simgood

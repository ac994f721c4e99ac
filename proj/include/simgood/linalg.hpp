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
#include <initializer_list>
#include <span>
#include <vector>

namespace simgood {

using Vector = std::vector<double>;

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const double> entries() const { return data_; }
  std::span<double> entries() { return data_; }

  Vector column(std::size_t j) const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double squared_distance(std::span<const double> a, std::span<const double> b);

double frobenius_norm(const Matrix& m);

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
Vector multiply(const Matrix& m, std::span<const double> x);
// m^T x
Vector multiply_transposed(const Matrix& m, std::span<const double> x);
// x^T m y
double bilinear_form(std::span<const double> x, const Matrix& m, std::span<const double> y);

Matrix outer(std::span<const double> u, std::span<const double> v);
Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& m, double factor);
Matrix lerp(const Matrix& a, const Matrix& b, double t);  // t*a + (1-t)*b

// Lower-triangular L with L L^T = m for symmetric positive definite m.
// Throws NoConvergence when a pivot is not positive.
Matrix cholesky_factor(Matrix m);
Vector cholesky_solve(const Matrix& l, std::span<const double> b);
// Solves m x = b for symmetric positive definite m.
Vector solve_spd(Matrix m, std::span<const double> b);

double max_abs_diff(const Matrix& a, const Matrix& b);
bool all_finite(std::span<const double> values);

}  // namespace simgood

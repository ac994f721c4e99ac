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

#include "simgood/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "simgood/error.hpp"
#include "simgood/rng.hpp"
#include "simgood/simd.hpp"

namespace simgood {
namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) sum += a(i, j) * a(i, j);
  }
  return std::sqrt(2.0 * sum);
}

void check_symmetric(const Matrix& s, double tol) {
  if (s.rows() != s.cols()) throw Error(ErrorKind::kNonSymmetric, "matrix is not square");
  double scale = 1.0;
  for (double v : s.entries()) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = i + 1; j < s.cols(); ++j) {
      if (std::abs(s(i, j) - s(j, i)) > tol * scale) {
        std::ostringstream msg;
        msg << "asymmetry at (" << i << ", " << j << ")";
        throw Error(ErrorKind::kNonSymmetric, msg.str());
      }
    }
  }
}

// Applies the rotation that zeroes a(p, q). Rows are rotated with the
// vector kernel and columns p, q are then mirrored from the rows.
void rotate_pair(Matrix& a, Matrix& vt, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double app = a(p, p);
  const double aqq = a(q, q);
  const double theta = (aqq - app) / (2.0 * apq);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  simd::rotate(a.row(p), a.row(q), c, s);
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    a(k, p) = a(p, k);
    a(k, q) = a(q, k);
  }
  a(p, p) = app - t * apq;
  a(q, q) = aqq + t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  simd::rotate(vt.row(p), vt.row(q), c, s);
}

}  // namespace

EigenDecomposition sym_eig(const Matrix& s, const JacobiOptions& options) {
  if (!(options.tol > 0.0)) throw Error(ErrorKind::kInvalidParameter, "sym_eig: tol must be > 0");
  check_symmetric(s, options.symmetry_tol);
  const std::size_t n = s.rows();

  // Symmetrize exactly so the mirrored-column update stays consistent.
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (s(i, j) + s(j, i));
  }
  Matrix vt = Matrix::identity(n);

  const double threshold = options.tol * std::max(1.0, frobenius_norm(a));
  std::size_t sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > threshold) {
    if (sweep == options.max_sweeps) {
      std::ostringstream msg;
      msg << "off-diagonal norm " << off << " after " << sweep << " sweeps";
      throw Error(ErrorKind::kNoConvergence, msg.str());
    }
    // Early sweeps only rotate entries above a fraction of the mean
    // off-diagonal magnitude; later sweeps flush entries that can no longer
    // change either diagonal value.
    const double pair_count = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double skip_below = sweep < 3 ? 0.2 * off / std::sqrt(2.0 * pair_count) : 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0 || apq <= skip_below) continue;
        if (sweep > 3 && std::abs(a(p, p)) + 1e3 * apq == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + 1e3 * apq == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate_pair(a, vt, p, q);
      }
    }
    ++sweep;
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition result;
  result.sweeps = sweep;
  result.eigenvalues.resize(n);
  result.eigenvectors = Matrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    result.eigenvalues[col] = a(src, src);
    auto v = vt.row(src);
    for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, col) = v[i];
  }
  return result;
}

namespace {

// Orthonormalizes the rows of q in place (two passes of modified
// Gram-Schmidt). Rows that collapse are replaced by fresh random directions.
void orthonormalize_rows(Matrix& q, Rng& rng) {
  const std::size_t m = q.rows();
  const std::size_t n = q.cols();
  for (std::size_t i = 0; i < m; ++i) {
    for (int attempt = 0;; ++attempt) {
      auto qi = q.row(i);
      const double before = norm2(qi);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < i; ++j) simd::axpy(-simd::dot(q.row(j), qi), q.row(j), qi);
      }
      const double after = norm2(qi);
      if (after > 1e-10 * before && after > 0.0) {
        for (double& v : qi) v /= after;
        break;
      }
      if (attempt == 8) throw Error(ErrorKind::kNoConvergence, "cannot complete orthonormal basis");
      for (std::size_t c = 0; c < n; ++c) qi[c] = rng.uniform() - 0.5;
    }
  }
}

// z.row(j) = s * q.row(j) for symmetric s.
Matrix apply_rows(const Matrix& s, const Matrix& q) {
  Matrix z(q.rows(), q.cols());
  for (std::size_t j = 0; j < q.rows(); ++j) {
    auto zj = z.row(j);
    for (std::size_t i = 0; i < s.rows(); ++i) zj[i] = simd::dot(s.row(i), q.row(j));
  }
  return z;
}

}  // namespace

EigenDecomposition sym_eig_top(const Matrix& s, std::size_t k, const SubspaceOptions& options) {
  check_symmetric(s, options.jacobi.symmetry_tol);
  const std::size_t n = s.rows();
  if (k == 0 || k > n) throw Error(ErrorKind::kInvalidParameter, "sym_eig_top: k out of range");
  const std::size_t m = std::min(n, k + options.oversample);
  if (m == n) {
    EigenDecomposition full = sym_eig(s, options.jacobi);
    EigenDecomposition top;
    top.sweeps = full.sweeps;
    top.eigenvalues.assign(full.eigenvalues.begin(), full.eigenvalues.begin() + static_cast<std::ptrdiff_t>(k));
    top.eigenvectors = Matrix(n, k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < k; ++c) top.eigenvectors(i, c) = full.eigenvectors(i, c);
    }
    return top;
  }

  Rng rng(options.seed);
  Matrix q(m, n);
  for (double& v : q.entries()) v = rng.uniform() - 0.5;
  orthonormalize_rows(q, rng);

  for (std::size_t iter = 1; iter <= options.max_iters; ++iter) {
    const Matrix z = apply_rows(s, q);
    Matrix h(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        const double v = 0.5 * (simd::dot(q.row(i), z.row(j)) + simd::dot(q.row(j), z.row(i)));
        h(i, j) = v;
        h(j, i) = v;
      }
    }
    const EigenDecomposition ritz = sym_eig(h, options.jacobi);

    // Ritz vectors u_c = sum_j W(j, c) q_j and their images s u_c.
    Matrix u(m, n);
    Matrix su(m, n);
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t j = 0; j < m; ++j) {
        const double w = ritz.eigenvectors(j, c);
        simd::axpy(w, q.row(j), u.row(c));
        simd::axpy(w, z.row(j), su.row(c));
      }
    }
    const double scale = std::max(1.0, std::abs(ritz.eigenvalues.front()));
    double worst = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      auto r = su.row(c);
      simd::axpy(-ritz.eigenvalues[c], u.row(c), r);
      worst = std::max(worst, norm2(r));
    }
    if (worst <= options.tol * scale) {
      EigenDecomposition top;
      top.sweeps = iter;
      top.eigenvalues.assign(ritz.eigenvalues.begin(), ritz.eigenvalues.begin() + static_cast<std::ptrdiff_t>(k));
      top.eigenvectors = Matrix(n, k);
      for (std::size_t c = 0; c < k; ++c) {
        auto uc = u.row(c);
        const double norm = norm2(uc);
        for (std::size_t i = 0; i < n; ++i) top.eigenvectors(i, c) = uc[i] / norm;
      }
      return top;
    }
    // Next block: images of the Ritz vectors, re-orthonormalized.
    for (std::size_t c = 0; c < m; ++c) {
      auto target = q.row(c);
      auto source = su.row(c);
      // su rows below k hold residuals now; rebuild them from u and theta.
      if (c < k) simd::axpy(ritz.eigenvalues[c], u.row(c), source);
      std::copy(source.begin(), source.end(), target.begin());
    }
    orthonormalize_rows(q, rng);
  }
  throw Error(ErrorKind::kNoConvergence, "subspace iteration did not reach the residual tolerance");
}

}  // namespace simgood

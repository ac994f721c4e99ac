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

#include "simgood/linalg.hpp"

namespace simgood {

struct EigenDecomposition {
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // unit-norm columns, paired with eigenvalues
  std::size_t sweeps = 0;
};

struct JacobiOptions {
  double tol = 1e-10;  // on the off-diagonal Frobenius norm, relative to max(1, |S|_F)
  std::size_t max_sweeps = 100;
  double symmetry_tol = 1e-9;
};

// Cyclic Jacobi eigensolver for a symmetric matrix.
// Throws NonSymmetric or NoConvergence.
EigenDecomposition sym_eig(const Matrix& s, const JacobiOptions& options = {});

struct SubspaceOptions {
  std::size_t oversample = 12;
  std::size_t max_iters = 2000;
  // Ritz residual |S u - theta u| bound, relative to max(1, |theta_max|).
  double tol = 1e-11;
  std::uint64_t seed = 0x5eed;
  JacobiOptions jacobi;
};

// Leading k eigenpairs of a symmetric matrix by block subspace iteration with
// Rayleigh-Ritz; the small projected problems go through sym_eig. The result
// holds k eigenvalues (descending) and an n x k eigenvector matrix.
EigenDecomposition sym_eig_top(const Matrix& s, std::size_t k, const SubspaceOptions& options = {});

}  // namespace simgood

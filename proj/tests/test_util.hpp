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

#include <cmath>
#include <cstdint>

#include "simgood/data.hpp"
#include "simgood/linalg.hpp"
#include "simgood/rng.hpp"

namespace simgood::testing {

inline Vector random_vector(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  Vector v(n);
  for (double& x : v) x = lo + (hi - lo) * rng.uniform();
  return v;
}

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& x : m.entries()) x = 2.0 * rng.uniform() - 1.0;
  return m;
}

inline Matrix random_symmetric(Rng& rng, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = 2.0 * rng.uniform() - 1.0;
  }
  return m;
}

// Uniform direction scaled to a random radius in [0, radius].
inline Vector random_in_ball(Rng& rng, std::size_t d, double radius = 1.0) {
  Vector v(d);
  for (double& x : v) x = rng.normal();
  const double n = norm2(v);
  const double r = radius * rng.uniform();
  for (double& x : v) x *= n > 0.0 ? r / n : 0.0;
  return v;
}

inline Matrix random_in_frobenius_ball(Rng& rng, std::size_t d, double radius = 1.0) {
  Matrix a = random_matrix(rng, d, d);
  return scale(a, radius * rng.uniform() / frobenius_norm(a));
}

// Points in the unit ball with labels from a random linear rule flipped with
// probability noise.
inline Dataset random_dataset(Rng& rng, std::size_t n, std::size_t d, double noise = 0.1) {
  Dataset ds;
  ds.dim = d;
  const Vector w = random_vector(rng, d);
  for (std::size_t i = 0; i < n; ++i) {
    LabeledPoint p{random_in_ball(rng, d), 1};
    p.label = dot(w, p.features) >= 0.0 ? 1 : -1;
    if (rng.uniform() < noise) p.label = -p.label;
    ds.points.push_back(std::move(p));
  }
  return ds;
}

}  // namespace simgood::testing

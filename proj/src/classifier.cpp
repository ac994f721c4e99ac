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

#include "simgood/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "simgood/error.hpp"
#include "simgood/simd.hpp"

namespace simgood {
namespace {

void check_dim(std::span<const double> x, std::size_t dim, const char* what) {
  if (x.size() != dim) {
    std::ostringstream msg;
    msg << what << ": expected dimension " << dim << ", got " << x.size();
    throw Error(ErrorKind::kDimensionMismatch, msg.str());
  }
}

Vector normalized(std::span<const double> x) {
  Vector out(x.begin(), x.end());
  const double n = norm2(x);
  if (n > 0.0) {
    for (double& v : out) v /= n;
  }
  return out;
}

// Rows are right(x'_j) for every landmark.
Matrix right_factors(const SimilarityEvaluator& k, std::span<const LabeledPoint> points) {
  Matrix g(points.size(), k.dim());
  for (std::size_t j = 0; j < points.size(); ++j) {
    const Vector r = k.right(points[j].features);
    std::copy(r.begin(), r.end(), g.row(j).begin());
  }
  return g;
}

// Dual of the L1 problem restricted to the landmarks in cuts:
//   min -sum beta  s.t.  sum_i beta_i l_i f_i - s = 0,  g_j . s - t_j = 0 (j in cuts),
//   beta in [0,1], s free, t_j in [-lambda, lambda].
// Row duals of the cut rows are -alpha_j.
LpProblem restricted_dual(const Matrix& f_signed, const Matrix& g, std::span<const std::size_t> cuts,
                          double lambda) {
  const std::size_t n = f_signed.rows();
  const std::size_t r = f_signed.cols();
  const std::size_t q = cuts.size();
  const std::size_t rows = r + q;
  const std::size_t cols = n + r + q;
  LpProblem lp;
  lp.a = Matrix(rows, cols);
  lp.b.assign(rows, 0.0);
  lp.c.assign(cols, 0.0);
  lp.lower.assign(cols, -kInf);
  lp.upper.assign(cols, kInf);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < r; ++k) lp.a(k, i) = f_signed(i, k);
    lp.c[i] = -1.0;
    lp.lower[i] = 0.0;
    lp.upper[i] = 1.0;
  }
  for (std::size_t k = 0; k < r; ++k) lp.a(k, n + k) = -1.0;
  for (std::size_t p = 0; p < q; ++p) {
    for (std::size_t k = 0; k < r; ++k) lp.a(r + p, n + k) = g(cuts[p], k);
    lp.a(r + p, n + r + p) = -1.0;
    lp.lower[n + r + p] = -lambda;
    lp.upper[n + r + p] = lambda;
  }
  return lp;
}

}  // namespace

const char* similarity_kind_name(SimilarityKind kind) {
  return kind == SimilarityKind::kBilinear ? "bilinear" : "cosine";
}

SimilarityEvaluator SimilarityEvaluator::bilinear(Matrix a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "bilinear similarity needs a square matrix");
  }
  SimilarityEvaluator k;
  k.kind_ = SimilarityKind::kBilinear;
  k.dim_ = a.rows();
  k.a_ = std::move(a);
  return k;
}

SimilarityEvaluator SimilarityEvaluator::cosine(std::size_t dim) {
  SimilarityEvaluator k;
  k.kind_ = SimilarityKind::kCosine;
  k.dim_ = dim;
  return k;
}

Vector SimilarityEvaluator::left(std::span<const double> x) const {
  check_dim(x, dim_, "similarity");
  if (kind_ == SimilarityKind::kCosine) return normalized(x);
  return Vector(x.begin(), x.end());
}

Vector SimilarityEvaluator::right(std::span<const double> y) const {
  check_dim(y, dim_, "similarity");
  if (kind_ == SimilarityKind::kCosine) return normalized(y);
  return multiply(a_, y);
}

double SimilarityEvaluator::operator()(std::span<const double> x, std::span<const double> y) const {
  check_dim(x, dim_, "similarity");
  check_dim(y, dim_, "similarity");
  if (kind_ == SimilarityKind::kBilinear) return bilinear_form(x, a_, y);
  const double nx = norm2(x);
  const double ny = norm2(y);
  if (nx == 0.0 || ny == 0.0) return 0.0;
  return dot(x, y) / (nx * ny);
}

Landmarks landmarks_from(const Dataset& ds) { return Landmarks{ds.points}; }

Vector similarity_map(const SimilarityEvaluator& k, const Landmarks& landmarks,
                      std::span<const double> x) {
  const Vector lx = k.left(x);
  Vector out(landmarks.size());
  for (std::size_t j = 0; j < landmarks.size(); ++j) {
    out[j] = simd::dot(lx, k.right(landmarks.points[j].features));
  }
  return out;
}

double l1_objective(const SimilarityEvaluator& k, const Landmarks& landmarks, const Dataset& train,
                    std::span<const double> alpha, double lambda) {
  if (alpha.size() != landmarks.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "alpha length differs from landmark count");
  }
  double total = 0.0;
  for (const auto& p : train.points) {
    double score = 0.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] != 0.0) score += alpha[j] * k(p.features, landmarks.points[j].features);
    }
    total += std::max(0.0, 1.0 - p.label * score);
  }
  for (double a : alpha) total += lambda * std::abs(a);
  return total;
}

SparseLinearClassifier train_l1_classifier(const SimilarityEvaluator& k, const Landmarks& landmarks,
                                           const Dataset& train, double lambda,
                                           const L1Options& options) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::kInvalidParameter, "lambda must be a finite value >= 0");
  }
  if (landmarks.size() == 0 || train.empty()) {
    throw Error(ErrorKind::kTooSmall, "L1 classifier needs landmarks and training points");
  }
  const std::size_t n = train.size();
  const std::size_t r = k.dim();
  Matrix f_signed(n, r);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector f = k.left(train.points[i].features);
    for (std::size_t c = 0; c < r; ++c) f_signed(i, c) = train.points[i].label * f[c];
  }
  const Matrix g = right_factors(k, landmarks.points);

  std::vector<std::size_t> cuts;
  std::vector<bool> in_cuts(landmarks.size(), false);
  LpResult lp;
  std::size_t lp_iterations = 0;
  std::size_t round = 0;
  const double tol = options.violation_tol * std::max(1.0, lambda);
  while (true) {
    if (round >= options.max_iters) {
      std::ostringstream msg;
      msg << "L1 classifier: constraints still violated after " << round << " rounds";
      throw Error(ErrorKind::kNoConvergence, msg.str());
    }
    ++round;
    lp = solve_lp(restricted_dual(f_signed, g, cuts, lambda), options.lp);
    lp_iterations += lp.iterations;
    if (lp.status != LpStatus::kOptimal) {
      throw Error(ErrorKind::kNoConvergence,
                  std::string("L1 classifier LP ended ") + lp_status_name(lp.status));
    }
    const std::span<const double> s(lp.x.data() + n, r);
    std::vector<std::pair<double, std::size_t>> violated;
    for (std::size_t j = 0; j < landmarks.size(); ++j) {
      if (in_cuts[j]) continue;
      const double excess = std::abs(simd::dot(g.row(j), s)) - lambda;
      if (excess > tol) violated.emplace_back(-excess, j);
    }
    if (violated.empty()) break;
    const std::size_t take = std::min(violated.size(), std::max<std::size_t>(1, options.cuts_per_round));
    std::partial_sort(violated.begin(), violated.begin() + static_cast<std::ptrdiff_t>(take),
                      violated.end());
    for (std::size_t p = 0; p < take; ++p) {
      cuts.push_back(violated[p].second);
      in_cuts[violated[p].second] = true;
    }
  }

  SparseLinearClassifier c;
  c.landmarks = landmarks;
  c.similarity = k;
  c.lambda = lambda;
  c.alpha.assign(landmarks.size(), 0.0);
  for (std::size_t p = 0; p < cuts.size(); ++p) {
    const double a = -lp.duals[r + p];
    c.alpha[cuts[p]] = std::abs(a) > kAlphaThreshold ? a : 0.0;
  }
  c.sparsity = static_cast<std::size_t>(
      std::count_if(c.alpha.begin(), c.alpha.end(), [](double a) { return a != 0.0; }));
  c.objective = l1_objective(k, landmarks, train, c.alpha, lambda);
  c.dual_objective = -lp.objective;
  c.lp_iterations = lp_iterations;
  c.rounds = round;
  return c;
}

double decision_value(const SparseLinearClassifier& c, std::span<const double> x) {
  check_dim(x, c.similarity.dim(), "predict");
  double score = 0.0;
  for (std::size_t j = 0; j < c.alpha.size(); ++j) {
    if (c.alpha[j] != 0.0) score += c.alpha[j] * c.similarity(x, c.landmarks.points[j].features);
  }
  return score;
}

int predict(const SparseLinearClassifier& c, std::span<const double> x) {
  return decision_value(c, x) >= 0.0 ? 1 : -1;
}

double accuracy(const SparseLinearClassifier& c, const Dataset& test) {
  if (test.empty()) throw Error(ErrorKind::kTooSmall, "accuracy on empty set");
  std::size_t correct = 0;
  for (const auto& p : test.points) correct += predict(c, p.features) == p.label;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(test.size());
}

namespace {

void check_k(std::size_t n_neighbors, std::size_t n_train) {
  if (n_neighbors == 0 || n_neighbors % 2 == 0 || n_neighbors > n_train) {
    std::ostringstream msg;
    msg << "k = " << n_neighbors << " must be odd and in [1, " << n_train << "]";
    throw Error(ErrorKind::kInvalidK, msg.str());
  }
}

int knn_vote(const Matrix& g, const Dataset& train, std::span<const double> lx,
             std::size_t n_neighbors, std::vector<std::size_t>& order, Vector& sims) {
  for (std::size_t i = 0; i < train.size(); ++i) sims[i] = simd::dot(lx, g.row(i));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_neighbors),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      return sims[a] != sims[b] ? sims[a] > sims[b] : a < b;
                    });
  int votes = 0;
  for (std::size_t p = 0; p < n_neighbors; ++p) votes += train.points[order[p]].label;
  return votes >= 0 ? 1 : -1;
}

}  // namespace

int knn_predict(const SimilarityEvaluator& k, const Dataset& train, std::span<const double> x,
                std::size_t n_neighbors) {
  check_k(n_neighbors, train.size());
  const Matrix g = right_factors(k, train.points);
  std::vector<std::size_t> order(train.size());
  Vector sims(train.size());
  return knn_vote(g, train, k.left(x), n_neighbors, order, sims);
}

double knn_accuracy(const SimilarityEvaluator& k, const Dataset& train, const Dataset& test,
                    std::size_t n_neighbors) {
  check_k(n_neighbors, train.size());
  if (test.empty()) throw Error(ErrorKind::kTooSmall, "accuracy on empty set");
  const Matrix g = right_factors(k, train.points);
  std::vector<std::size_t> order(train.size());
  Vector sims(train.size());
  std::size_t correct = 0;
  for (const auto& p : test.points) {
    correct += knn_vote(g, train, k.left(p.features), n_neighbors, order, sims) == p.label;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace simgood

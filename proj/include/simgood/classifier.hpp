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
#include <vector>

#include "simgood/data.hpp"
#include "simgood/linalg.hpp"
#include "simgood/lp.hpp"

namespace simgood {

enum class SimilarityKind { kBilinear, kCosine };

const char* similarity_kind_name(SimilarityKind kind);

// K(x, y) written as left(x) . right(y): x^T (A y) for the bilinear form and
// x/|x| . y/|y| for cosine. The training LP relies on this factorization.
class SimilarityEvaluator {
 public:
  static SimilarityEvaluator bilinear(Matrix a);
  static SimilarityEvaluator cosine(std::size_t dim);

  SimilarityKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const Matrix& matrix() const { return a_; }  // empty for cosine

  Vector left(std::span<const double> x) const;
  Vector right(std::span<const double> y) const;
  double operator()(std::span<const double> x, std::span<const double> y) const;

 private:
  SimilarityKind kind_ = SimilarityKind::kCosine;
  std::size_t dim_ = 0;
  Matrix a_;
};

struct Landmarks {
  std::vector<LabeledPoint> points;

  std::size_t size() const { return points.size(); }
};

Landmarks landmarks_from(const Dataset& ds);

Vector similarity_map(const SimilarityEvaluator& k, const Landmarks& landmarks,
                      std::span<const double> x);

inline constexpr double kAlphaThreshold = 1e-10;

struct SparseLinearClassifier {
  Vector alpha;
  Landmarks landmarks;
  SimilarityEvaluator similarity;
  double lambda = 0.0;
  std::size_t sparsity = 0;

  double objective = 0.0;       // hinge sum + lambda |alpha|_1 at the stored alpha
  double dual_objective = 0.0;  // certificate from the LP
  std::size_t lp_iterations = 0;
  std::size_t rounds = 0;
};

struct L1Options {
  // Cap on cutting-plane rounds.
  std::size_t max_iters = 1000;
  std::size_t cuts_per_round = 8;
  double violation_tol = 1e-9;
  LpOptions lp;
};

// Minimizes sum_i [1 - l_i sum_j alpha_j K(x_i, x'_j)]_+ + lambda |alpha|_1.
SparseLinearClassifier train_l1_classifier(const SimilarityEvaluator& k, const Landmarks& landmarks,
                                           const Dataset& train, double lambda,
                                           const L1Options& options = {});

double l1_objective(const SimilarityEvaluator& k, const Landmarks& landmarks, const Dataset& train,
                    std::span<const double> alpha, double lambda);

double decision_value(const SparseLinearClassifier& c, std::span<const double> x);
int predict(const SparseLinearClassifier& c, std::span<const double> x);

// Percentage of correctly classified points.
double accuracy(const SparseLinearClassifier& c, const Dataset& test);

int knn_predict(const SimilarityEvaluator& k, const Dataset& train, std::span<const double> x,
                std::size_t n_neighbors);

// Same as knn_predict over every point of test, reusing the training factors.
double knn_accuracy(const SimilarityEvaluator& k, const Dataset& train, const Dataset& test,
                    std::size_t n_neighbors);

}  // namespace simgood

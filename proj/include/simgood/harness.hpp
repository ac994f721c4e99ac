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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "simgood/classifier.hpp"
#include "simgood/data.hpp"
#include "simgood/goodness.hpp"
#include "simgood/kpca.hpp"
#include "simgood/sllc.hpp"

namespace simgood {

enum class Method { kSllcLinear, kSllcKnn, kIdentityLinear, kIdentityKnn };

const char* method_name(Method method);
Method parse_method(std::string_view name);
std::vector<Method> all_methods();

// "1e-7:1e-2" expands to the decades between the endpoints; otherwise a
// comma-separated list of values.
std::vector<double> parse_grid(std::string_view text);

std::vector<double> decade_grid(int first_exponent, int last_exponent);

enum class SllcSolver { kReduced, kFull };

struct ExperimentConfig {
  // "rings" generates data; anything else is a dataset path.
  std::string dataset = "rings";
  // Optional fixed test set; the dataset is then used whole for training.
  std::string test_path;
  ParseOptions parse;
  std::size_t rings_train = 700;
  std::size_t rings_test = 300;

  std::size_t n_runs = 10;
  std::uint64_t seed = 1;
  double train_fraction = 0.7;       // outer train/test split
  double validation_fraction = 0.3;  // carved from the training part

  ComponentPolicy kpca_components;
  std::vector<double> beta_grid = decade_grid(-7, -2);
  std::vector<double> gamma_grid = decade_grid(-7, -2);
  std::vector<double> lambda_grid = decade_grid(-3, 2);
  double tau_hat = 1.0;
  std::size_t k_nn = 3;
  std::vector<Method> methods = all_methods();

  SllcSolver solver = SllcSolver::kReduced;
  SllcConfig sllc;
  L1Options l1;
  double delta = 0.05;

  void validate() const;
};

struct Selection {
  bool valid = false;
  double beta = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
  double validation_accuracy = 0.0;
};

struct CvResult {
  Selection sllc_linear;
  Selection sllc_knn;
  Selection identity_linear;
  double sllc_seconds = 0.0;
  // Classifier training and validation time, indexed by Method.
  std::array<double, 4> method_seconds{};
  std::size_t unconverged = 0;  // SLLC solves that stopped short of the gap tolerance
};

// Staged grid search: one SLLC solve per (beta, gamma), then every lambda on
// top of the learned similarity. Highest validation accuracy wins; ties go to
// the larger beta, then gamma, then lambda.
CvResult cross_validate(const Dataset& train, const Dataset& validation,
                        const ExperimentConfig& cfg);

SimilarityModel train_similarity(const Dataset& train, double beta, double gamma,
                                 const ExperimentConfig& cfg);

struct MethodResult {
  Method method = Method::kSllcLinear;
  double accuracy = 0.0;  // percent, on the test split
  double sparsity = 0.0;  // NaN for k-NN
  double beta = 0.0;      // NaN where the method has no such parameter
  double gamma = 0.0;
  double lambda = 0.0;
  double time_s = 0.0;
};

struct StageTimes {
  double kpca = 0.0;
  double sllc = 0.0;
  double classifier = 0.0;
};

struct RunResult {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::vector<MethodResult> methods;
  StageTimes times;
  // Goodness of the similarity learned for the first requested SLLC method,
  // measured on the full training split, and the matching bound.
  bool has_goodness = false;
  GoodnessReport goodness;
  // Needs the normalized goodness within [0, 1], which holds when |A|_F <= 1.
  bool has_bound = false;
  BoundReport bound;
  SimilarityModel similarity;
  SparseLinearClassifier classifier;  // sllc-linear, when requested
  std::size_t unconverged = 0;
};

struct ExperimentReport {
  std::vector<RunResult> runs;
  // One row per requested method: mean accuracy and sparsity, most frequent
  // selected hyperparameters, mean time.
  std::vector<MethodResult> summary;
};

// One run on an already split train/test pair (raw, unscaled features).
RunResult run_single(const Dataset& train, const Dataset& test, const ExperimentConfig& cfg,
                     std::size_t run, std::uint64_t run_seed);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Tab-separated: method accuracy sparsity beta gamma lambda time_s. time_s is
// printed as NA unless with_time, so reports compare byte for byte.
void write_report_tsv(std::ostream& out, const std::vector<MethodResult>& rows, bool with_time);

// Human-readable goodness, bound and per-stage timing notes.
void write_report_notes(std::ostream& out, const ExperimentReport& report);

}  // namespace simgood

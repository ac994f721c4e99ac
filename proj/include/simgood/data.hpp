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
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "simgood/linalg.hpp"

namespace simgood {

struct LabeledPoint {
  Vector features;
  int label = 1;  // -1 or +1
};

struct Dataset {
  std::vector<LabeledPoint> points;
  std::size_t dim = 0;
  std::string name;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

enum class DataFormat { kSparse, kCsv };

struct ParseOptions {
  // Feature dimension to enforce; 0 infers it from the data.
  std::size_t dim = 0;
  // CSV only: ignore a leading identifier column.
  bool drop_first_column = false;
  // CSV only: rows containing this token are skipped.
  std::string missing_token = "?";
};

// Sparse lines are "<label> <idx>:<val> ..." with 1-based indices; CSV lines
// carry the label in the last column. Blank and '#' lines are ignored. Two
// distinct labels are mapped smaller -> -1, larger -> +1; a single label maps
// by sign. Throws LineError(kParse) or LineError(kLabel).
Dataset parse_dataset(std::istream& in, DataFormat format, const ParseOptions& options = {},
                      std::string name = {});

Dataset load_dataset(const std::string& path, DataFormat format, const ParseOptions& options = {});

// ".csv" and ".data" are CSV, anything else sparse.
DataFormat guess_format(const std::string& path);

// Writes the sparse format with 17 significant digits; zeros are omitted.
void write_sparse(std::ostream& out, const Dataset& ds);
void save_sparse(const std::string& path, const Dataset& ds);

Dataset subset(const Dataset& ds, std::span<const std::size_t> indices);

struct ScalingParams {
  Vector min;
  Vector max;
  std::size_t dim = 0;
};

ScalingParams fit_scaling(const Dataset& train);
// Maps attribute j affinely so [min_j, max_j] -> [-1/d, 1/d]; constant
// attributes map to 0. Values outside the fitted range are not clipped.
Dataset apply_scaling(const ScalingParams& params, const Dataset& ds);

struct SplitSpec {
  std::uint64_t seed = 0;
  double train_fraction = 0.7;
  double validation_fraction = 0.0;
};

struct SplitResult {
  Dataset train;
  Dataset validation;
  Dataset test;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> validation_indices;
  std::vector<std::size_t> test_indices;
};

// n_fit = floor(n * train_fraction); validation = floor(n_fit * validation_fraction)
// carved from the fitting part; remainder is test. Throws TooSmall.
SplitResult split(const Dataset& ds, const SplitSpec& spec);

// Two concentric noisy rings in 2-D: +1 at radius 1, -1 at radius 2, uniform
// angle, radial noise N(0, 0.1^2). Labels alternate so classes balance within 1.
std::pair<Dataset, Dataset> generate_rings(std::size_t n_train, std::size_t n_test,
                                           std::uint64_t seed);

}  // namespace simgood

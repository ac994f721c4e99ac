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

#include <iosfwd>
#include <string>

#include "simgood/classifier.hpp"
#include "simgood/kpca.hpp"
#include "simgood/sllc.hpp"

namespace simgood {

// Text model files:
//   SIMGOOD 1 <kind>
//   <dimensions>
//   <whitespace separated numbers, 17 significant digits>
// '#' starts a comment that runs to the end of the line.
inline constexpr int kModelFormatVersion = 1;

void write_model(std::ostream& out, const KpcaModel& model);
void write_model(std::ostream& out, const SimilarityModel& model);
void write_model(std::ostream& out, const SparseLinearClassifier& model);

KpcaModel read_kpca_model(std::istream& in);
SimilarityModel read_similarity_model(std::istream& in);
SparseLinearClassifier read_classifier(std::istream& in);

template <class Model>
void save_model(const std::string& path, const Model& model);

KpcaModel load_kpca_model(const std::string& path);
SimilarityModel load_similarity_model(const std::string& path);
SparseLinearClassifier load_classifier(const std::string& path);

}  // namespace simgood

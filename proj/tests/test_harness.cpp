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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "simgood/error.hpp"
#include "simgood/harness.hpp"
#include "test_util.hpp"

using namespace simgood;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n_runs = 2;
  cfg.rings_train = 80;
  cfg.rings_test = 40;
  cfg.beta_grid = {1e-3, 1e-1};
  cfg.gamma_grid = {1e-2, 1e-1};
  cfg.lambda_grid = {1e-2, 1.0};
  return cfg;
}

Dataset blobs(Rng& rng, std::size_t n, double flip) {
  Dataset ds;
  ds.dim = 2;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = i % 2 == 0 ? 1 : -1;
    Vector x{label * 0.5 + 0.3 * (rng.uniform() - 0.5), rng.uniform() - 0.5};
    ds.points.push_back({x, rng.uniform() < flip ? -label : label});
  }
  return ds;
}

}  // namespace

TEST_CASE("grid parsing") {
  CHECK(parse_grid("1e-3:1e0") == std::vector<double>{1e-3, 1e-2, 1e-1, 1.0});
  CHECK(parse_grid("1e2:1e2") == std::vector<double>{100.0});
  CHECK(parse_grid("0.5,2,7") == std::vector<double>{0.5, 2.0, 7.0});
  CHECK(parse_grid("3") == std::vector<double>{3.0});
  CHECK(decade_grid(-7, -2).size() == 6);
  CHECK(decade_grid(-7, -2).front() == 1e-7);
  CHECK_THROWS_AS(parse_grid(""), Error);
  CHECK_THROWS_AS(parse_grid("1,x"), Error);
  CHECK_THROWS_AS(parse_grid("1e2:1e-2"), Error);
  CHECK_THROWS_AS(parse_grid("3:40"), Error);
  const auto shifted = parse_grid("3:300");
  REQUIRE(shifted.size() == 3);
  CHECK(shifted[2] == doctest::Approx(300.0));
}

TEST_CASE("method names round-trip") {
  for (Method m : all_methods()) CHECK(parse_method(method_name(m)) == m);
  CHECK(all_methods().size() == 4);
  CHECK_THROWS_AS(parse_method("svm"), Error);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.k_nn = 4;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = ExperimentConfig{};
  cfg.beta_grid = {};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = ExperimentConfig{};
  cfg.gamma_grid = {0.0};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = ExperimentConfig{};
  cfg.n_runs = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("a single cell grid selects that cell") {
  Rng rng(91);
  const Dataset train = blobs(rng, 40, 0.1);
  const Dataset validation = blobs(rng, 20, 0.1);
  ExperimentConfig cfg;
  cfg.beta_grid = {1e-2};
  cfg.gamma_grid = {1e-1};
  cfg.lambda_grid = {0.5};
  const CvResult cv = cross_validate(train, validation, cfg);
  CHECK(cv.sllc_linear.valid);
  CHECK(cv.sllc_linear.beta == 1e-2);
  CHECK(cv.sllc_linear.gamma == 1e-1);
  CHECK(cv.sllc_linear.lambda == 0.5);
  CHECK(cv.sllc_knn.beta == 1e-2);
  CHECK(cv.identity_linear.lambda == 0.5);
}

TEST_CASE("selection follows validation accuracy with ties to larger values") {
  Rng rng(92);
  for (int rep = 0; rep < 3; ++rep) {
    const Dataset train = blobs(rng, 40, 0.2);
    const Dataset validation = blobs(rng, 30, 0.2);
    ExperimentConfig cfg;
    cfg.methods = {Method::kIdentityLinear};
    cfg.lambda_grid = {1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0};
    const CvResult cv = cross_validate(train, validation, cfg);
    // Independent argmax over the same cells.
    double best = -1.0, best_lambda = 0.0;
    for (double lambda : cfg.lambda_grid) {
      const auto c = train_l1_classifier(SimilarityEvaluator::cosine(2), landmarks_from(train), train, lambda);
      const double acc = accuracy(c, validation);
      if (acc >= best) {
        best = acc;
        best_lambda = lambda;
      }
    }
    CHECK(cv.identity_linear.validation_accuracy == best);
    CHECK(cv.identity_linear.lambda == best_lambda);
    CHECK(!cv.sllc_linear.valid);
  }
}

TEST_CASE("all-tied grid picks the largest values") {
  Dataset train;
  train.dim = 1;
  train.points = {{{1.0}, 1}, {{0.8}, 1}, {{-1.0}, -1}, {{-0.7}, -1}};
  const Dataset validation = train;
  ExperimentConfig cfg;
  cfg.k_nn = 1;
  cfg.beta_grid = {1e-3, 1e-2};
  cfg.gamma_grid = {1e-2, 1e-1};
  cfg.lambda_grid = {1e-3, 1e-2};
  const CvResult cv = cross_validate(train, validation, cfg);
  CHECK(cv.sllc_knn.validation_accuracy == 100.0);
  CHECK(cv.sllc_knn.beta == 1e-2);
  CHECK(cv.sllc_knn.gamma == 1e-1);
  CHECK(cv.sllc_linear.validation_accuracy == 100.0);
  CHECK(cv.sllc_linear.beta == 1e-2);
  CHECK(cv.sllc_linear.gamma == 1e-1);
  CHECK(cv.sllc_linear.lambda == 1e-2);
}

TEST_CASE("runs are deterministic") {
  Rng rng(93);
  const Dataset train = blobs(rng, 60, 0.1);
  const Dataset test = blobs(rng, 30, 0.1);
  ExperimentConfig cfg = small_config();
  const RunResult a = run_single(train, test, cfg, 0, 7);
  const RunResult b = run_single(train, test, cfg, 0, 7);
  REQUIRE(a.methods.size() == b.methods.size());
  for (std::size_t i = 0; i < a.methods.size(); ++i) {
    CHECK(a.methods[i].accuracy == b.methods[i].accuracy);
    const bool same = a.methods[i].lambda == b.methods[i].lambda ||
                      (std::isnan(a.methods[i].lambda) && std::isnan(b.methods[i].lambda));
    CHECK(same);
  }
  CHECK(a.similarity.a == b.similarity.a);
  CHECK(a.classifier.alpha == b.classifier.alpha);
}

TEST_CASE("test data never influences training") {
  Rng rng(94);
  const Dataset train = blobs(rng, 60, 0.1);
  Dataset test = blobs(rng, 30, 0.1);
  const ExperimentConfig cfg = small_config();
  const RunResult a = run_single(train, test, cfg, 0, 11);
  for (auto& p : test.points) {
    p.label = -p.label;
    p.features[0] += 3.0;
  }
  const RunResult b = run_single(train, test, cfg, 0, 11);
  CHECK(a.similarity.a == b.similarity.a);
  CHECK(a.classifier.alpha == b.classifier.alpha);
  for (std::size_t i = 0; i < a.methods.size(); ++i) {
    if (!std::isnan(a.methods[i].beta)) CHECK(a.methods[i].beta == b.methods[i].beta);
    if (!std::isnan(a.methods[i].lambda)) CHECK(a.methods[i].lambda == b.methods[i].lambda);
  }
}

TEST_CASE("only requested methods are reported") {
  ExperimentConfig cfg = small_config();
  cfg.n_runs = 1;
  cfg.methods = {Method::kIdentityKnn, Method::kSllcLinear};
  const ExperimentReport report = run_experiment(cfg);
  REQUIRE(report.summary.size() == 2);
  CHECK(report.summary[0].method == Method::kIdentityKnn);
  CHECK(report.summary[1].method == Method::kSllcLinear);
  CHECK(std::isnan(report.summary[0].sparsity));
  CHECK(std::isnan(report.summary[0].lambda));
  CHECK(std::isnan(report.summary[0].beta));
  CHECK(report.runs[0].has_goodness);

  std::ostringstream tsv;
  write_report_tsv(tsv, report.summary, false);
  std::istringstream lines(tsv.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "method\taccuracy\tsparsity\tbeta\tgamma\tlambda\ttime_s");
  CHECK(first.rfind("identity-knn\t", 0) == 0);
  CHECK(first.find("\tNA\tNA\tNA\tNA\tNA") != std::string::npos);
}

TEST_CASE("summary averages runs") {
  const ExperimentConfig cfg = small_config();
  const ExperimentReport report = run_experiment(cfg);
  REQUIRE(report.runs.size() == 2);
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    const double mean = (report.runs[0].methods[i].accuracy + report.runs[1].methods[i].accuracy) / 2;
    CHECK(report.summary[i].accuracy == doctest::Approx(mean));
  }
  CHECK(report.runs[0].seed != report.runs[1].seed);
  std::ostringstream notes;
  write_report_notes(notes, report);
  CHECK(notes.str().find("# goodness") != std::string::npos);
}

TEST_CASE("rings experiment report is reproducible") {
  ExperimentConfig cfg = small_config();
  cfg.n_runs = 1;
  std::ostringstream a, b;
  write_report_tsv(a, run_experiment(cfg).summary, false);
  write_report_tsv(b, run_experiment(cfg).summary, false);
  CHECK(a.str() == b.str());
}

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

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "simgood/classifier.hpp"
#include "simgood/data.hpp"
#include "simgood/error.hpp"
#include "simgood/goodness.hpp"
#include "simgood/harness.hpp"
#include "simgood/kpca.hpp"
#include "simgood/model_io.hpp"
#include "simgood/sllc.hpp"

namespace {

using namespace simgood;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct DataFlags {
  bool csv = false;
  bool sparse = false;
  bool drop_first_column = false;

  void attach(CLI::App* app) {
    app->add_flag("--csv", csv, "Read inputs as CSV with the label in the last column");
    app->add_flag("--sparse", sparse, "Read inputs as '<label> <idx>:<val>' lines");
    app->add_flag("--drop-first-column", drop_first_column, "CSV: ignore a leading id column");
  }

  ParseOptions options() const {
    ParseOptions opts;
    opts.drop_first_column = drop_first_column;
    return opts;
  }

  Dataset load(const std::string& path, std::size_t dim = 0) const {
    ParseOptions opts = options();
    opts.dim = dim;
    const DataFormat format = csv ? DataFormat::kCsv : sparse ? DataFormat::kSparse : guess_format(path);
    return load_dataset(path, format, opts);
  }
};

std::string fmt(double v, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

SimilarityEvaluator pick_similarity(const std::string& similarity_path, std::size_t dim) {
  if (similarity_path.empty()) return SimilarityEvaluator::cosine(dim);
  return SimilarityEvaluator::bilinear(load_similarity_model(similarity_path).a);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bilinear similarity learning for sparse linear classifiers"};
  app.require_subcommand(1);
  std::function<void()> action;

  // gen-rings
  std::size_t rings_train = 700;
  std::size_t rings_test = 300;
  std::uint64_t rings_seed = 1;
  std::string rings_train_out;
  std::string rings_test_out;
  auto* gen = app.add_subcommand("gen-rings", "Generate the two-ring dataset in sparse format");
  gen->add_option("--n-train", rings_train, "Training points")->capture_default_str();
  gen->add_option("--n-test", rings_test, "Test points")->capture_default_str();
  gen->add_option("--seed", rings_seed, "Seed")->capture_default_str();
  gen->add_option("--train-out", rings_train_out, "Training output file")->required();
  gen->add_option("--test-out", rings_test_out, "Test output file")->required();
  gen->callback([&] {
    action = [&] {
      const auto [train, test] = generate_rings(rings_train, rings_test, rings_seed);
      save_sparse(rings_train_out, train);
      save_sparse(rings_test_out, test);
    };
  });

  // kpca
  DataFlags kpca_data;
  std::string kpca_train;
  std::string kpca_out;
  std::string kpca_train_out;
  std::vector<std::string> kpca_project;
  std::optional<std::size_t> kpca_mult;
  std::optional<std::size_t> kpca_components;
  double kpca_sigma = 0.0;
  bool kpca_no_scale = false;
  auto* kpca = app.add_subcommand("kpca", "Scale, fit Gaussian KPCA and project datasets");
  kpca_data.attach(kpca);
  kpca->add_option("--train", kpca_train, "Training data")->required();
  kpca->add_option("--out", kpca_out, "KPCA model output")->required();
  kpca->add_option("--train-out", kpca_train_out, "Projected training data output");
  kpca->add_option("--project", kpca_project, "IN OUT pairs of datasets to project")->expected(2, 1 << 20);
  kpca->add_option("--kpca-mult", kpca_mult, "Components per input dimension");
  kpca->add_option("--components", kpca_components, "Explicit component count");
  kpca->add_option("--sigma", kpca_sigma, "Kernel width; 0 uses the mean pairwise distance");
  kpca->add_flag("--no-scale", kpca_no_scale, "Skip attribute scaling");
  kpca->callback([&] {
    action = [&] {
      if (kpca_project.size() % 2 != 0) {
        throw Error(ErrorKind::kInvalidParameter, "--project takes IN OUT pairs");
      }
      Dataset train = kpca_data.load(kpca_train);
      std::optional<ScalingParams> scaling;
      if (!kpca_no_scale) {
        scaling = fit_scaling(train);
        train = apply_scaling(*scaling, train);
      }
      ComponentPolicy policy;
      if (kpca_mult) policy.multiplier = policy.low_dim_multiplier = *kpca_mult;
      if (kpca_components) policy.explicit_count = *kpca_components;
      KpcaOptions options;
      options.sigma = kpca_sigma;
      const KpcaModel model = kpca_fit(train, policy.components_for(train.dim), options);
      save_model(kpca_out, model);
      if (!kpca_train_out.empty()) save_sparse(kpca_train_out, kpca_transform(model, train));
      for (std::size_t i = 0; i < kpca_project.size(); i += 2) {
        Dataset ds = kpca_data.load(kpca_project[i], train.dim);
        if (scaling) ds = apply_scaling(*scaling, ds);
        save_sparse(kpca_project[i + 1], kpca_transform(model, ds));
      }
    };
  });

  // train-sllc
  DataFlags sllc_data;
  std::string sllc_train;
  std::string sllc_out;
  double sllc_beta = 0.0;
  double sllc_gamma = 0.0;
  double sllc_tau = 1.0;
  std::string sllc_solver = "reduced";
  SllcConfig sllc_config;
  auto* sllc = app.add_subcommand("train-sllc", "Learn the bilinear similarity on projected data");
  sllc_data.attach(sllc);
  sllc->add_option("--train", sllc_train, "Training data (already projected)")->required();
  sllc->add_option("--out", sllc_out, "Similarity model output")->required();
  sllc->add_option("--beta", sllc_beta, "Frobenius regularization")->required();
  sllc->add_option("--gamma", sllc_gamma, "Goodness margin")->required();
  sllc->add_option("--tau-hat", sllc_tau, "Fraction of training points used as reasonable points")
      ->capture_default_str();
  sllc->add_option("--solver", sllc_solver, "reduced or full")
      ->check(CLI::IsMember({"reduced", "full"}))
      ->capture_default_str();
  sllc->add_option("--seed", sllc_config.seed, "Seed for the reasonable subset");
  sllc->add_option("--max-iters", sllc_config.max_iters, "Iteration cap")->capture_default_str();
  sllc->add_flag("--require-convergence", sllc_config.require_convergence,
                 "Fail instead of flagging when the solver stops short of the gap tolerance");
  sllc->callback([&] {
    action = [&] {
      const Dataset train = sllc_data.load(sllc_train);
      const ReasonableSet reasonable = make_reasonable_set(train, sllc_tau, sllc_config.seed);
      sllc_config.beta = sllc_beta;
      sllc_config.gamma = sllc_gamma;
      const SimilarityModel model = sllc_solver == "full"
                                        ? solve_sllc_full(train, reasonable, sllc_config)
                                        : solve_sllc_reduced(train, reasonable, sllc_config);
      save_model(sllc_out, model);
      const GoodnessReport g = empirical_goodness(model.a, train, reasonable, model.gamma);
      std::cout << "objective\tepsilon_T\tviolation_rate\tfrobenius_norm\titerations\tconverged\n"
                << fmt(model.objective_value, "%.10g") << '\t' << fmt(g.epsilon_hat, "%.10g") << '\t'
                << fmt(g.violation_rate, "%.6g") << '\t' << fmt(model.frobenius_norm_a, "%.10g")
                << '\t' << model.iterations << '\t' << (model.converged ? "yes" : "no") << '\n';
    };
  });

  // train-classifier
  DataFlags clf_data;
  std::string clf_train;
  std::string clf_similarity;
  std::string clf_out;
  double clf_lambda = 0.0;
  auto* clf = app.add_subcommand("train-classifier", "Train the sparse L1 linear classifier");
  clf_data.attach(clf);
  clf->add_option("--train", clf_train, "Training data; every point is a landmark")->required();
  clf->add_option("--similarity", clf_similarity, "Similarity model; cosine when omitted");
  clf->add_option("--lambda", clf_lambda, "L1 weight")->required();
  clf->add_option("--out", clf_out, "Classifier model output")->required();
  clf->callback([&] {
    action = [&] {
      const Dataset train = clf_data.load(clf_train);
      const auto k = pick_similarity(clf_similarity, train.dim);
      const auto c = train_l1_classifier(k, landmarks_from(train), train, clf_lambda);
      save_model(clf_out, c);
      std::cout << "sparsity\tobjective\ttrain_accuracy\n"
                << c.sparsity << '\t' << fmt(c.objective, "%.10g") << '\t'
                << fmt(accuracy(c, train), "%.2f") << '\n';
    };
  });

  // evaluate
  DataFlags eval_data;
  std::string eval_test;
  std::string eval_classifier;
  std::string eval_train;
  std::string eval_similarity;
  std::size_t eval_k = 0;
  auto* eval = app.add_subcommand("evaluate", "Test accuracy of a classifier or of k-NN");
  eval_data.attach(eval);
  eval->add_option("--test", eval_test, "Test data (projected like the training data)")->required();
  eval->add_option("--classifier", eval_classifier, "Classifier model");
  eval->add_option("--knn-k", eval_k, "Use k-NN with this k instead of a classifier");
  eval->add_option("--train", eval_train, "k-NN training data");
  eval->add_option("--similarity", eval_similarity, "k-NN similarity model; cosine when omitted");
  eval->callback([&] {
    action = [&] {
      if (eval_classifier.empty() == (eval_k == 0)) {
        throw CLI::ValidationError("evaluate", "give exactly one of --classifier or --knn-k");
      }
      if (!eval_classifier.empty()) {
        const auto c = load_classifier(eval_classifier);
        const Dataset test = eval_data.load(eval_test, c.similarity.dim());
        std::cout << "accuracy\tsparsity\n"
                  << fmt(accuracy(c, test), "%.2f") << '\t' << c.sparsity << '\n';
        return;
      }
      if (eval_train.empty()) throw CLI::ValidationError("evaluate", "--knn-k needs --train");
      const Dataset train = eval_data.load(eval_train);
      const Dataset test = eval_data.load(eval_test, train.dim);
      const auto k = pick_similarity(eval_similarity, train.dim);
      std::cout << "accuracy\n" << fmt(knn_accuracy(k, train, test, eval_k), "%.2f") << '\n';
    };
  });

  // bound
  DataFlags bound_data;
  std::optional<double> bound_epsilon;
  std::optional<std::size_t> bound_n;
  std::optional<double> bound_beta;
  std::optional<double> bound_gamma;
  double bound_tau = 1.0;
  double bound_delta = 0.05;
  std::string bound_similarity;
  std::string bound_train;
  auto* bound = app.add_subcommand("bound", "Evaluate the stability generalization bound");
  bound_data.attach(bound);
  bound->add_option("--epsilon", bound_epsilon, "Normalized empirical goodness in [0, 1]");
  bound->add_option("--n-train", bound_n, "Training set size");
  bound->add_option("--beta", bound_beta, "Regularization");
  bound->add_option("--gamma", bound_gamma, "Margin");
  bound->add_option("--tau-hat", bound_tau, "Reasonable fraction")->capture_default_str();
  bound->add_option("--delta", bound_delta, "Confidence parameter")->capture_default_str();
  bound->add_option("--similarity", bound_similarity, "Take beta, gamma, tau from this model");
  bound->add_option("--train", bound_train, "With --similarity: measure epsilon on this data");
  bound->callback([&] {
    action = [&] {
      double eps = 0.0;
      std::size_t n = 0;
      double beta = 0.0;
      double gamma = 0.0;
      double tau = bound_tau;
      if (!bound_similarity.empty()) {
        if (bound_train.empty()) throw CLI::ValidationError("bound", "--similarity needs --train");
        const SimilarityModel model = load_similarity_model(bound_similarity);
        const Dataset train = bound_data.load(bound_train, model.a.rows());
        const ReasonableSet reasonable = make_reasonable_set(train, model.tau_hat);
        eps = empirical_goodness(model.a, train, reasonable, model.gamma).epsilon_normalized;
        n = train.size();
        beta = model.beta;
        gamma = model.gamma;
        tau = reasonable.tau_hat;
      } else {
        if (!bound_epsilon || !bound_n || !bound_beta || !bound_gamma) {
          throw CLI::ValidationError("bound", "give --epsilon --n-train --beta --gamma, or --similarity");
        }
        eps = *bound_epsilon;
        n = *bound_n;
        beta = *bound_beta;
        gamma = *bound_gamma;
      }
      const BoundReport r = stability_bound(eps, n, beta, gamma, tau, bound_delta);
      std::cout << "epsilon_T_normalized\tn_train\tkappa\tdelta\tbound\n"
                << fmt(r.epsilon_T_normalized, "%.10g") << '\t' << r.n_train << '\t'
                << fmt(r.kappa, "%.10g") << '\t' << fmt(r.delta, "%g") << '\t'
                << fmt(r.bound_value, "%.10g") << '\n';
    };
  });

  // experiment
  ExperimentConfig cfg;
  DataFlags exp_data;
  std::string beta_grid = "1e-7:1e-2";
  std::string gamma_grid = "1e-7:1e-2";
  std::string lambda_grid = "1e-3:1e2";
  std::vector<std::string> methods;
  std::optional<std::size_t> exp_mult;
  std::optional<std::size_t> exp_components;
  std::string exp_solver = "reduced";
  bool timing = false;
  auto* exp = app.add_subcommand("experiment", "Full pipeline with cross-validation over runs");
  exp_data.attach(exp);
  exp->add_option("--dataset", cfg.dataset, "'rings' or a dataset path")->capture_default_str();
  exp->add_option("--test", cfg.test_path, "Fixed test set; disables the outer split");
  exp->add_option("--runs", cfg.n_runs, "Number of runs")->capture_default_str();
  exp->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  exp->add_option("--beta-grid", beta_grid, "low:high decades or a comma list")->capture_default_str();
  exp->add_option("--gamma-grid", gamma_grid, "low:high decades or a comma list")->capture_default_str();
  exp->add_option("--lambda-grid", lambda_grid, "low:high decades or a comma list")->capture_default_str();
  exp->add_option("--kpca-mult", exp_mult, "Components per input dimension");
  exp->add_option("--components", exp_components, "Explicit component count");
  exp->add_option("--tau-hat", cfg.tau_hat, "Reasonable fraction")->capture_default_str();
  exp->add_option("--knn-k", cfg.k_nn, "k for the k-NN methods")->capture_default_str();
  exp->add_option("--method", methods, "sllc-linear, sllc-knn, identity-linear, identity-knn")
      ->delimiter(',');
  exp->add_option("--solver", exp_solver, "reduced or full")
      ->check(CLI::IsMember({"reduced", "full"}))
      ->capture_default_str();
  exp->add_option("--rings-train", cfg.rings_train, "Generated training size")->capture_default_str();
  exp->add_option("--rings-test", cfg.rings_test, "Generated test size")->capture_default_str();
  exp->add_option("--delta", cfg.delta, "Bound confidence parameter")->capture_default_str();
  exp->add_flag("--timing", timing, "Fill the time_s column (breaks byte-identical reruns)");
  exp->callback([&] {
    action = [&] {
      cfg.parse = exp_data.options();
      cfg.beta_grid = parse_grid(beta_grid);
      cfg.gamma_grid = parse_grid(gamma_grid);
      cfg.lambda_grid = parse_grid(lambda_grid);
      if (exp_mult) cfg.kpca_components.multiplier = cfg.kpca_components.low_dim_multiplier = *exp_mult;
      if (exp_components) cfg.kpca_components.explicit_count = *exp_components;
      cfg.solver = exp_solver == "full" ? SllcSolver::kFull : SllcSolver::kReduced;
      if (!methods.empty()) {
        cfg.methods.clear();
        for (const auto& m : methods) cfg.methods.push_back(parse_method(m));
      }
      const ExperimentReport report = run_experiment(cfg);
      write_report_tsv(std::cout, report.summary, timing);
      write_report_notes(std::cerr, report);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }
  try {
    action();
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::kInvalidParameter || e.kind() == ErrorKind::kInvalidK) return kExitUsage;
    return is_numerical_error(e.kind()) ? kExitNumerical : kExitData;
  }
  return kExitOk;
}

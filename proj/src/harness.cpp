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

#include "simgood/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "simgood/error.hpp"
#include "simgood/rng.hpp"

namespace simgood {
namespace {

constexpr double kNa = std::numeric_limits<double>::quiet_NaN();

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double parse_real(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::kInvalidParameter, "bad grid value '" + std::string(text) + "'");
  }
  return v;
}

std::size_t index_of(Method m) { return static_cast<std::size_t>(m); }

bool is_sllc(Method m) { return m == Method::kSllcLinear || m == Method::kSllcKnn; }
bool is_knn(Method m) { return m == Method::kSllcKnn || m == Method::kIdentityKnn; }

bool wants(const ExperimentConfig& cfg, Method m) {
  return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end();
}

void consider(Selection& best, double acc, double beta, double gamma, double lambda) {
  const bool better =
      !best.valid || acc > best.validation_accuracy ||
      (acc == best.validation_accuracy &&
       (beta > best.beta ||
        (beta == best.beta && (gamma > best.gamma || (gamma == best.gamma && lambda > best.lambda)))));
  if (better) best = Selection{true, beta, gamma, lambda, acc};
}

// Most frequent value; ties go to the larger one. NaN when every run lacks it.
double mode(const std::vector<double>& values) {
  std::map<double, std::size_t> counts;
  for (double v : values) {
    if (!std::isnan(v)) ++counts[v];
  }
  double best = kNa;
  std::size_t best_count = 0;
  for (const auto& [v, c] : counts) {
    if (c >= best_count) {
      best = v;
      best_count = c;
    }
  }
  return best;
}

std::string cell(double v, const char* format) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

}  // namespace

const char* method_name(Method method) {
  switch (method) {
    case Method::kSllcLinear: return "sllc-linear";
    case Method::kSllcKnn: return "sllc-knn";
    case Method::kIdentityLinear: return "identity-linear";
    case Method::kIdentityKnn: return "identity-knn";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : all_methods()) {
    if (name == method_name(m)) return m;
  }
  throw Error(ErrorKind::kInvalidParameter, "unknown method '" + std::string(name) + "'");
}

std::vector<Method> all_methods() {
  return {Method::kSllcLinear, Method::kSllcKnn, Method::kIdentityLinear, Method::kIdentityKnn};
}

std::vector<double> decade_grid(int first_exponent, int last_exponent) {
  std::vector<double> grid;
  for (int e = first_exponent; e <= last_exponent; ++e) {
    grid.push_back(std::stod("1e" + std::to_string(e)));
  }
  return grid;
}

std::vector<double> parse_grid(std::string_view text) {
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    const double lo = parse_real(text.substr(0, colon));
    const double hi = parse_real(text.substr(colon + 1));
    if (!(lo > 0.0) || !(hi >= lo)) {
      throw Error(ErrorKind::kInvalidParameter, "decade range needs 0 < low <= high");
    }
    const double e_lo = std::log10(lo);
    const double e_hi = std::log10(hi);
    const auto steps = static_cast<int>(std::lround(e_hi - e_lo));
    if (std::abs(e_hi - e_lo - steps) > 1e-9) {
      throw Error(ErrorKind::kInvalidParameter, "decade range endpoints must differ by powers of 10");
    }
    if (std::abs(e_lo - std::round(e_lo)) < 1e-9) {
      const auto first = static_cast<int>(std::lround(e_lo));
      return decade_grid(first, first + steps);
    }
    std::vector<double> grid;
    for (int k = 0; k <= steps; ++k) grid.push_back(lo * std::pow(10.0, k));
    return grid;
  }
  std::vector<double> grid;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = std::min(text.find(',', start), text.size());
    grid.push_back(parse_real(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return grid;
}

void ExperimentConfig::validate() const {
  if (beta_grid.empty() || gamma_grid.empty() || lambda_grid.empty()) {
    throw Error(ErrorKind::kInvalidParameter, "hyperparameter grids must be non-empty");
  }
  for (double v : beta_grid) {
    if (!(v > 0.0)) throw Error(ErrorKind::kInvalidParameter, "beta values must be positive");
  }
  for (double v : gamma_grid) {
    if (!(v > 0.0)) throw Error(ErrorKind::kInvalidParameter, "gamma values must be positive");
  }
  for (double v : lambda_grid) {
    if (!(v >= 0.0)) throw Error(ErrorKind::kInvalidParameter, "lambda values must be >= 0");
  }
  if (!(tau_hat > 0.0 && tau_hat <= 1.0)) {
    throw Error(ErrorKind::kInvalidParameter, "tau_hat must lie in (0, 1]");
  }
  if (k_nn == 0 || k_nn % 2 == 0) throw Error(ErrorKind::kInvalidK, "k must be odd and positive");
  if (n_runs == 0) throw Error(ErrorKind::kInvalidParameter, "need at least one run");
  if (methods.empty()) throw Error(ErrorKind::kInvalidParameter, "no methods requested");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw Error(ErrorKind::kInvalidParameter, "validation fraction must lie in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::kInvalidParameter, "delta must lie in (0, 1)");
}

SimilarityModel train_similarity(const Dataset& train, double beta, double gamma,
                                 const ExperimentConfig& cfg) {
  const ReasonableSet reasonable = make_reasonable_set(train, cfg.tau_hat, cfg.sllc.seed);
  SllcConfig config = cfg.sllc;
  config.beta = beta;
  config.gamma = gamma;
  return cfg.solver == SllcSolver::kFull ? solve_sllc_full(train, reasonable, config)
                                         : solve_sllc_reduced(train, reasonable, config);
}

CvResult cross_validate(const Dataset& train, const Dataset& validation,
                        const ExperimentConfig& cfg) {
  cfg.validate();
  CvResult cv;
  const Landmarks landmarks = landmarks_from(train);
  const bool linear = wants(cfg, Method::kSllcLinear);
  const bool knn = wants(cfg, Method::kSllcKnn);
  if (linear || knn) {
    for (double beta : cfg.beta_grid) {
      for (double gamma : cfg.gamma_grid) {
        Stopwatch sllc_clock;
        const SimilarityModel model = train_similarity(train, beta, gamma, cfg);
        cv.sllc_seconds += sllc_clock.seconds();
        cv.unconverged += model.converged ? 0 : 1;
        const auto k = SimilarityEvaluator::bilinear(model.a);
        if (linear) {
          Stopwatch clock;
          for (double lambda : cfg.lambda_grid) {
            const auto c = train_l1_classifier(k, landmarks, train, lambda, cfg.l1);
            consider(cv.sllc_linear, accuracy(c, validation), beta, gamma, lambda);
          }
          cv.method_seconds[index_of(Method::kSllcLinear)] += clock.seconds();
        }
        if (knn) {
          Stopwatch clock;
          consider(cv.sllc_knn, knn_accuracy(k, train, validation, cfg.k_nn), beta, gamma, 0.0);
          cv.method_seconds[index_of(Method::kSllcKnn)] += clock.seconds();
        }
      }
    }
  }
  if (wants(cfg, Method::kIdentityLinear)) {
    Stopwatch clock;
    const auto k = SimilarityEvaluator::cosine(train.dim);
    for (double lambda : cfg.lambda_grid) {
      const auto c = train_l1_classifier(k, landmarks, train, lambda, cfg.l1);
      consider(cv.identity_linear, accuracy(c, validation), 0.0, 0.0, lambda);
    }
    cv.method_seconds[index_of(Method::kIdentityLinear)] += clock.seconds();
  }
  return cv;
}

RunResult run_single(const Dataset& train, const Dataset& test, const ExperimentConfig& cfg,
                     std::size_t run, std::uint64_t run_seed) {
  cfg.validate();
  RunResult result;
  result.run = run;
  result.seed = run_seed;

  const SplitResult inner =
      split(train, SplitSpec{derive_seed(run_seed, 1), 1.0 - cfg.validation_fraction, 0.0});
  if (cfg.k_nn > inner.train.size()) throw Error(ErrorKind::kInvalidK, "k exceeds the training size");

  Stopwatch kpca_clock;
  const ScalingParams scaling = fit_scaling(train);
  const KpcaModel kpca =
      kpca_fit(apply_scaling(scaling, train), cfg.kpca_components.components_for(train.dim));
  auto project = [&](const Dataset& ds) { return kpca_transform(kpca, apply_scaling(scaling, ds)); };
  const Dataset train_k = project(train);
  const Dataset fit_k = project(inner.train);
  const Dataset validation_k = project(inner.test);
  const Dataset test_k = project(test);
  result.times.kpca = kpca_clock.seconds();

  const CvResult cv = cross_validate(fit_k, validation_k, cfg);
  result.times.sllc = cv.sllc_seconds;
  result.unconverged = cv.unconverged;
  const Landmarks landmarks = landmarks_from(train_k);

  std::array<double, 4> final_seconds{};
  double final_sllc_seconds = 0.0;
  bool have_similarity = false;
  SimilarityModel other;
  // The first SLLC method's similarity is kept in the result together with its
  // goodness and bound; a second one is retrained only if its cell differs.
  auto similarity_for = [&](const Selection& sel) -> const SimilarityModel& {
    if (have_similarity && result.similarity.beta == sel.beta && result.similarity.gamma == sel.gamma) {
      return result.similarity;
    }
    Stopwatch clock;
    SimilarityModel model = train_similarity(train_k, sel.beta, sel.gamma, cfg);
    final_sllc_seconds += clock.seconds();
    result.unconverged += model.converged ? 0 : 1;
    if (have_similarity) {
      other = std::move(model);
      return other;
    }
    have_similarity = true;
    result.similarity = std::move(model);
    const ReasonableSet reasonable = make_reasonable_set(train_k, cfg.tau_hat, cfg.sllc.seed);
    result.goodness = empirical_goodness(result.similarity.a, train_k, reasonable, sel.gamma);
    result.has_goodness = true;
    if (result.goodness.epsilon_normalized <= 1.0 && train_k.size() >= 2) {
      result.bound = stability_bound(result.goodness.epsilon_normalized, train_k.size(), sel.beta,
                                     sel.gamma, reasonable.tau_hat, cfg.delta);
      result.has_bound = true;
    }
    return result.similarity;
  };

  for (Method m : cfg.methods) {
    MethodResult row{m, 0.0, kNa, kNa, kNa, kNa, 0.0};
    const Selection& sel = m == Method::kSllcLinear ? cv.sllc_linear
                           : m == Method::kSllcKnn  ? cv.sllc_knn
                                                    : cv.identity_linear;
    if (is_sllc(m)) {
      row.beta = sel.beta;
      row.gamma = sel.gamma;
    }
    const SimilarityEvaluator k = is_sllc(m) ? SimilarityEvaluator::bilinear(similarity_for(sel).a)
                                             : SimilarityEvaluator::cosine(train_k.dim);
    Stopwatch clock;
    if (is_knn(m)) {
      row.accuracy = knn_accuracy(k, train_k, test_k, cfg.k_nn);
    } else {
      row.lambda = sel.lambda;
      auto c = train_l1_classifier(k, landmarks, train_k, sel.lambda, cfg.l1);
      row.accuracy = accuracy(c, test_k);
      row.sparsity = static_cast<double>(c.sparsity);
      if (m == Method::kSllcLinear) result.classifier = std::move(c);
    }
    final_seconds[index_of(m)] = clock.seconds();
    result.methods.push_back(row);
  }
  result.times.sllc += final_sllc_seconds;
  for (auto& row : result.methods) {
    const std::size_t i = index_of(row.method);
    row.time_s = result.times.kpca + cv.method_seconds[i] + final_seconds[i];
    if (is_sllc(row.method)) row.time_s += result.times.sllc;
    result.times.classifier += cv.method_seconds[i] + final_seconds[i];
  }
  return result;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const bool rings = cfg.dataset == "rings";
  Dataset full;
  Dataset fixed_test;
  if (!rings) {
    full = load_dataset(cfg.dataset, guess_format(cfg.dataset), cfg.parse);
    if (!cfg.test_path.empty()) {
      ParseOptions opts = cfg.parse;
      opts.dim = full.dim;
      fixed_test = load_dataset(cfg.test_path, guess_format(cfg.test_path), opts);
      if (fixed_test.dim != full.dim) {
        throw Error(ErrorKind::kDimensionMismatch, "test set dimension differs from training set");
      }
    }
  }

  ExperimentReport report;
  for (std::size_t run = 0; run < cfg.n_runs; ++run) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, run);
    try {
      if (rings) {
        const auto [train, test] = generate_rings(cfg.rings_train, cfg.rings_test, run_seed);
        report.runs.push_back(run_single(train, test, cfg, run, run_seed));
      } else if (!cfg.test_path.empty()) {
        report.runs.push_back(run_single(full, fixed_test, cfg, run, run_seed));
      } else {
        const SplitResult outer = split(full, SplitSpec{run_seed, cfg.train_fraction, 0.0});
        report.runs.push_back(run_single(outer.train, outer.test, cfg, run, run_seed));
      }
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "run " << run << " (seed " << run_seed << "): " << e.what();
      throw Error(e.kind(), msg.str());
    }
  }

  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    MethodResult row{cfg.methods[i], 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    std::vector<double> betas, gammas, lambdas;
    for (const auto& r : report.runs) {
      const MethodResult& m = r.methods[i];
      row.accuracy += m.accuracy;
      row.sparsity += m.sparsity;
      row.time_s += m.time_s;
      betas.push_back(m.beta);
      gammas.push_back(m.gamma);
      lambdas.push_back(m.lambda);
    }
    const auto n = static_cast<double>(report.runs.size());
    row.accuracy /= n;
    row.sparsity /= n;
    row.time_s /= n;
    row.beta = mode(betas);
    row.gamma = mode(gammas);
    row.lambda = mode(lambdas);
    report.summary.push_back(row);
  }
  return report;
}

void write_report_tsv(std::ostream& out, const std::vector<MethodResult>& rows, bool with_time) {
  out << "method\taccuracy\tsparsity\tbeta\tgamma\tlambda\ttime_s\n";
  for (const auto& r : rows) {
    out << method_name(r.method) << '\t' << cell(r.accuracy, "%.2f") << '\t'
        << cell(r.sparsity, "%.2f") << '\t' << cell(r.beta, "%g") << '\t' << cell(r.gamma, "%g")
        << '\t' << cell(r.lambda, "%g") << '\t' << (with_time ? cell(r.time_s, "%.3f") : "NA")
        << '\n';
  }
}

void write_report_notes(std::ostream& out, const ExperimentReport& report) {
  if (report.runs.empty()) return;
  double eps = 0.0, violation = 0.0, bound = 0.0, kappa = 0.0;
  std::size_t with_goodness = 0, with_bound = 0, unconverged = 0;
  StageTimes times;
  for (const auto& r : report.runs) {
    unconverged += r.unconverged;
    times.kpca += r.times.kpca;
    times.sllc += r.times.sllc;
    times.classifier += r.times.classifier;
    if (r.has_goodness) {
      ++with_goodness;
      eps += r.goodness.epsilon_hat;
      violation += r.goodness.violation_rate;
    }
    if (r.has_bound) {
      ++with_bound;
      bound += r.bound.bound_value;
      kappa += r.bound.kappa;
    }
  }
  const auto n = static_cast<double>(report.runs.size());
  char buf[256];
  if (with_goodness > 0) {
    const auto g = static_cast<double>(with_goodness);
    std::snprintf(buf, sizeof buf, "# goodness: mean epsilon_T %.6g, mean violation rate %.6g\n",
                  eps / g, violation / g);
    out << buf;
  }
  if (with_bound > 0) {
    const auto b = static_cast<double>(with_bound);
    std::snprintf(buf, sizeof buf, "# bound (delta from config): mean kappa %.6g, mean bound %.6g\n",
                  kappa / b, bound / b);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "# mean stage seconds: kpca %.3f, sllc %.3f, classifier %.3f\n",
                times.kpca / n, times.sllc / n, times.classifier / n);
  out << buf;
  if (unconverged > 0) out << "# warning: " << unconverged << " SLLC solves stopped short of the duality-gap tolerance\n";
}

}  // namespace simgood

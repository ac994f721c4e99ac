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

#include "simgood/model_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "simgood/error.hpp"

namespace simgood {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_numbers(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << fmt(values[i]);
  out << '\n';
}

void write_matrix(std::ostream& out, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) write_numbers(out, m.row(i));
}

void write_header(std::ostream& out, const char* kind, std::initializer_list<std::size_t> dims) {
  out << "SIMGOOD " << kModelFormatVersion << ' ' << kind << '\n';
  bool first = true;
  for (std::size_t d : dims) {
    out << (first ? "" : " ") << d;
    first = false;
  }
  out << '\n';
}

double from_count(std::size_t n) { return static_cast<double>(n); }

class ModelReader {
 public:
  ModelReader(std::istream& in, const char* kind) : in_(in) {
    std::vector<std::string> header;
    if (!next_line(header)) fail("empty model file");
    if (header.size() != 3 || header[0] != "SIMGOOD") fail("expected 'SIMGOOD <version> <kind>'");
    int version = 0;
    const auto [ptr, ec] = std::from_chars(header[1].data(), header[1].data() + header[1].size(), version);
    if (ec != std::errc() || ptr != header[1].data() + header[1].size()) fail("bad version field");
    if (version != kModelFormatVersion) {
      throw LineError(ErrorKind::kVersion, line_, "unsupported model version " + header[1]);
    }
    if (header[2] != kind) fail("expected model kind '" + std::string(kind) + "', found '" + header[2] + "'");
    std::vector<std::string> dims;
    if (!next_line(dims)) fail("missing dimensions line");
    for (const auto& tok : dims) dims_.push_back(parse_count(tok));
  }

  const std::vector<std::size_t>& dims() const { return dims_; }

  void expect_dims(std::size_t n) {
    if (dims_.size() != n) fail("dimensions line needs " + std::to_string(n) + " fields");
  }

  double number() {
    while (pending_.empty()) {
      std::vector<std::string> tokens;
      if (!next_line(tokens)) fail("truncated model file");
      pending_.assign(tokens.begin(), tokens.end());
    }
    const std::string tok = std::move(pending_.front());
    pending_.pop_front();
    double v = 0.0;
    const char* begin = tok.data() + (tok.starts_with('+') ? 1 : 0);
    const auto [ptr, ec] = std::from_chars(begin, tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("not a number: '" + tok + "'");
    return v;
  }

  std::size_t count() {
    const double v = number();
    if (!(v >= 0.0) || v != std::floor(v) || v > 9007199254740992.0) fail("expected a count");
    return static_cast<std::size_t>(v);
  }

  bool flag() { return count() != 0; }

  Vector numbers(std::size_t n) {
    Vector out(n);
    for (double& v : out) v = number();
    return out;
  }

  Matrix matrix(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (double& v : m.entries()) v = number();
    return m;
  }

  void finish() {
    std::vector<std::string> tokens;
    if (!pending_.empty() || next_line(tokens)) fail("unexpected trailing data");
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw LineError(ErrorKind::kFormat, line_, message);
  }

 private:
  bool next_line(std::vector<std::string>& tokens) {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      if (const auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
      std::istringstream words(text);
      tokens.clear();
      for (std::string w; words >> w;) tokens.push_back(w);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::size_t parse_count(const std::string& tok) const {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("bad dimension '" + tok + "'");
    return v;
  }

  std::istream& in_;
  std::size_t line_ = 0;
  std::vector<std::size_t> dims_;
  std::deque<std::string> pending_;
};

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  return in;
}

}  // namespace

void write_model(std::ostream& out, const KpcaModel& m) {
  write_header(out, "kpca", {m.n_training(), m.input_dim(), m.n_components});
  out << "# sigma kernel_grand_mean norm_scale\n";
  write_numbers(out, std::vector{m.sigma, m.kernel_grand_mean, m.norm_scale});
  out << "# kernel_row_means\n";
  write_numbers(out, m.kernel_row_means);
  out << "# eigenvalues\n";
  write_numbers(out, m.eigenvalues);
  out << "# training_points\n";
  write_matrix(out, m.training_points);
  out << "# eigenvectors\n";
  write_matrix(out, m.eigenvectors);
}

KpcaModel read_kpca_model(std::istream& in) {
  ModelReader r(in, "kpca");
  r.expect_dims(3);
  const std::size_t n = r.dims()[0];
  const std::size_t d = r.dims()[1];
  const std::size_t k = r.dims()[2];
  KpcaModel m;
  m.sigma = r.number();
  m.kernel_grand_mean = r.number();
  m.norm_scale = r.number();
  m.kernel_row_means = r.numbers(n);
  m.eigenvalues = r.numbers(k);
  m.training_points = r.matrix(n, d);
  m.eigenvectors = r.matrix(n, k);
  m.n_components = k;
  r.finish();
  if (!(m.sigma > 0.0) || !(m.norm_scale > 0.0)) r.fail("sigma and norm_scale must be positive");
  return m;
}

void write_model(std::ostream& out, const SimilarityModel& m) {
  const std::size_t d = m.a.rows();
  write_header(out, "similarity", {d, m.objective_trace.size(), m.dual_trace.size()});
  out << "# gamma beta tau_hat n_reasonable\n";
  write_numbers(out, std::vector{m.gamma, m.beta, m.tau_hat, from_count(m.n_reasonable)});
  out << "# objective raw_objective frobenius_norm duality_gap iterations\n";
  write_numbers(out, std::vector{m.objective_value, m.raw_objective, m.frobenius_norm_a,
                                 m.duality_gap, from_count(m.iterations)});
  out << "# rescaled degenerate converged\n";
  write_numbers(out, std::vector{from_count(m.rescaled), from_count(m.degenerate),
                                 from_count(m.converged)});
  out << "# signed_mean\n";
  write_numbers(out, m.signed_mean);
  out << "# A\n";
  write_matrix(out, m.a);
  out << "# objective_trace\n";
  write_numbers(out, m.objective_trace);
  out << "# dual_trace\n";
  write_numbers(out, m.dual_trace);
}

SimilarityModel read_similarity_model(std::istream& in) {
  ModelReader r(in, "similarity");
  r.expect_dims(3);
  const std::size_t d = r.dims()[0];
  SimilarityModel m;
  m.gamma = r.number();
  m.beta = r.number();
  m.tau_hat = r.number();
  m.n_reasonable = r.count();
  m.objective_value = r.number();
  m.raw_objective = r.number();
  m.frobenius_norm_a = r.number();
  m.duality_gap = r.number();
  m.iterations = r.count();
  m.rescaled = r.flag();
  m.degenerate = r.flag();
  m.converged = r.flag();
  m.signed_mean = r.numbers(d);
  m.a = r.matrix(d, d);
  m.objective_trace = r.numbers(r.dims()[1]);
  m.dual_trace = r.numbers(r.dims()[2]);
  r.finish();
  return m;
}

void write_model(std::ostream& out, const SparseLinearClassifier& c) {
  const std::size_t dim = c.similarity.dim();
  write_header(out, "classifier", {c.landmarks.size(), dim});
  out << "# similarity (0 cosine, 1 bilinear)\n";
  write_numbers(out, std::vector{from_count(c.similarity.kind() == SimilarityKind::kBilinear)});
  out << "# lambda sparsity objective dual_objective lp_iterations rounds\n";
  write_numbers(out, std::vector{c.lambda, from_count(c.sparsity), c.objective, c.dual_objective,
                                 from_count(c.lp_iterations), from_count(c.rounds)});
  if (c.similarity.kind() == SimilarityKind::kBilinear) {
    out << "# A\n";
    write_matrix(out, c.similarity.matrix());
  }
  out << "# landmarks: alpha label features\n";
  for (std::size_t j = 0; j < c.landmarks.size(); ++j) {
    const auto& p = c.landmarks.points[j];
    Vector row{c.alpha[j], static_cast<double>(p.label)};
    row.insert(row.end(), p.features.begin(), p.features.end());
    write_numbers(out, row);
  }
}

SparseLinearClassifier read_classifier(std::istream& in) {
  ModelReader r(in, "classifier");
  r.expect_dims(2);
  const std::size_t n = r.dims()[0];
  const std::size_t dim = r.dims()[1];
  SparseLinearClassifier c;
  const bool bilinear = r.flag();
  c.lambda = r.number();
  c.sparsity = r.count();
  c.objective = r.number();
  c.dual_objective = r.number();
  c.lp_iterations = r.count();
  c.rounds = r.count();
  c.similarity = bilinear ? SimilarityEvaluator::bilinear(r.matrix(dim, dim))
                          : SimilarityEvaluator::cosine(dim);
  c.alpha.resize(n);
  c.landmarks.points.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    c.alpha[j] = r.number();
    const double label = r.number();
    if (label != 1.0 && label != -1.0) r.fail("landmark label must be -1 or +1");
    c.landmarks.points[j].label = static_cast<int>(label);
    c.landmarks.points[j].features = r.numbers(dim);
  }
  r.finish();
  std::size_t nonzero = 0;
  for (double a : c.alpha) nonzero += a != 0.0;
  if (nonzero != c.sparsity) r.fail("sparsity does not match alpha");
  return c;
}

template <class Model>
void save_model(const std::string& path, const Model& model) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  write_model(out, model);
  if (!out.flush()) throw Error(ErrorKind::kIo, "write failed for " + path);
}

template void save_model(const std::string&, const KpcaModel&);
template void save_model(const std::string&, const SimilarityModel&);
template void save_model(const std::string&, const SparseLinearClassifier&);

KpcaModel load_kpca_model(const std::string& path) {
  auto in = open_for_read(path);
  return read_kpca_model(in);
}

SimilarityModel load_similarity_model(const std::string& path) {
  auto in = open_for_read(path);
  return read_similarity_model(in);
}

SparseLinearClassifier load_classifier(const std::string& path) {
  auto in = open_for_read(path);
  return read_classifier(in);
}

}  // namespace simgood

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

#include "simgood/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "simgood/error.hpp"
#include "simgood/rng.hpp"

namespace simgood {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view token, double& value) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size() && std::isfinite(value);
}

bool parse_index(std::string_view token, std::size_t& value) {
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_on(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    fields.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

struct RawPoint {
  std::vector<std::pair<std::size_t, double>> entries;  // 0-based
  double label = 0.0;
  std::size_t line = 0;
};

RawPoint parse_sparse_line(std::string_view line, std::size_t line_no) {
  const auto tokens = split_whitespace(line);
  RawPoint raw;
  raw.line = line_no;
  if (!parse_double(tokens.front(), raw.label)) {
    throw LineError(ErrorKind::kParse, line_no, "bad label '" + std::string(tokens.front()) + "'");
  }
  std::set<std::size_t> seen;
  for (std::size_t t = 1; t < tokens.size(); ++t) {
    const auto colon = tokens[t].find(':');
    std::size_t index = 0;
    double value = 0.0;
    if (colon == std::string_view::npos || !parse_index(tokens[t].substr(0, colon), index) ||
        !parse_double(tokens[t].substr(colon + 1), value)) {
      throw LineError(ErrorKind::kParse, line_no, "bad entry '" + std::string(tokens[t]) + "'");
    }
    if (index == 0) throw LineError(ErrorKind::kParse, line_no, "feature indices are 1-based");
    if (!seen.insert(index).second) {
      throw LineError(ErrorKind::kParse, line_no, "duplicate index " + std::to_string(index));
    }
    raw.entries.emplace_back(index - 1, value);
  }
  return raw;
}

// Returns false for rows skipped because of a missing value.
bool parse_csv_line(std::string_view line, std::size_t line_no, const ParseOptions& options,
                    RawPoint& raw) {
  auto fields = split_on(line, ',');
  std::size_t first = options.drop_first_column ? 1 : 0;
  if (fields.size() < first + 2) {
    throw LineError(ErrorKind::kParse, line_no, "expected at least one feature and a label");
  }
  for (std::size_t f = first; f < fields.size(); ++f) {
    if (!options.missing_token.empty() && trim(fields[f]) == options.missing_token) return false;
  }
  raw = RawPoint{};
  raw.line = line_no;
  if (!parse_double(fields.back(), raw.label)) {
    throw LineError(ErrorKind::kParse, line_no, "bad label '" + std::string(fields.back()) + "'");
  }
  for (std::size_t f = first; f + 1 < fields.size(); ++f) {
    double value = 0.0;
    if (!parse_double(fields[f], value)) {
      throw LineError(ErrorKind::kParse, line_no, "bad value '" + std::string(fields[f]) + "'");
    }
    raw.entries.emplace_back(f - first, value);
  }
  return true;
}

}  // namespace

Dataset parse_dataset(std::istream& in, DataFormat format, const ParseOptions& options,
                      std::string name) {
  std::vector<RawPoint> raws;
  std::string line;
  std::size_t line_no = 0;
  std::size_t csv_width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (format == DataFormat::kSparse) {
      raws.push_back(parse_sparse_line(body, line_no));
    } else {
      RawPoint raw;
      if (!parse_csv_line(body, line_no, options, raw)) continue;
      if (csv_width == 0) {
        csv_width = raw.entries.size();
      } else if (raw.entries.size() != csv_width) {
        throw LineError(ErrorKind::kParse, line_no, "column count differs from first row");
      }
      raws.push_back(std::move(raw));
    }
  }
  if (raws.empty()) throw LineError(ErrorKind::kParse, line_no, "no data points");

  std::size_t dim = 0;
  for (const auto& raw : raws) {
    for (const auto& [index, value] : raw.entries) dim = std::max(dim, index + 1);
  }
  if (options.dim != 0) {
    if (dim > options.dim) {
      throw LineError(ErrorKind::kParse, line_no,
                      "feature index exceeds dimension " + std::to_string(options.dim));
    }
    dim = options.dim;
  }

  std::map<double, std::size_t> first_line_of_label;
  for (const auto& raw : raws) {
    first_line_of_label.try_emplace(raw.label, raw.line);
    if (first_line_of_label.size() > 2) {
      throw LineError(ErrorKind::kLabel, raw.line, "more than two distinct labels");
    }
  }
  const double negative_label = first_line_of_label.begin()->first;
  const bool single = first_line_of_label.size() == 1;

  Dataset ds;
  ds.dim = dim;
  ds.name = std::move(name);
  ds.points.reserve(raws.size());
  for (const auto& raw : raws) {
    LabeledPoint p;
    p.features.assign(dim, 0.0);
    for (const auto& [index, value] : raw.entries) p.features[index] = value;
    if (single) {
      p.label = raw.label > 0.0 ? 1 : -1;
    } else {
      p.label = raw.label == negative_label ? -1 : 1;
    }
    ds.points.push_back(std::move(p));
  }
  return ds;
}

Dataset load_dataset(const std::string& path, DataFormat format, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  return parse_dataset(in, format, options, path);
}

DataFormat guess_format(const std::string& path) {
  auto ends_with = [&path](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends_with(".csv") || ends_with(".data") ? DataFormat::kCsv : DataFormat::kSparse;
}

void write_sparse(std::ostream& out, const Dataset& ds) {
  char buf[64];
  for (const auto& p : ds.points) {
    out << (p.label > 0 ? "+1" : "-1");
    for (std::size_t j = 0; j < p.features.size(); ++j) {
      if (p.features[j] == 0.0) continue;
      std::snprintf(buf, sizeof(buf), " %zu:%.17g", j + 1, p.features[j]);
      out << buf;
    }
    out << '\n';
  }
}

void save_sparse(const std::string& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  write_sparse(out, ds);
}

Dataset subset(const Dataset& ds, std::span<const std::size_t> indices) {
  Dataset out;
  out.dim = ds.dim;
  out.name = ds.name;
  out.points.reserve(indices.size());
  for (std::size_t i : indices) out.points.push_back(ds.points.at(i));
  return out;
}

ScalingParams fit_scaling(const Dataset& train) {
  if (train.empty()) throw Error(ErrorKind::kTooSmall, "fit_scaling: empty dataset");
  ScalingParams params;
  params.dim = train.dim;
  params.min.assign(train.dim, 0.0);
  params.max.assign(train.dim, 0.0);
  for (std::size_t j = 0; j < train.dim; ++j) {
    params.min[j] = params.max[j] = train.points.front().features[j];
  }
  for (const auto& p : train.points) {
    for (std::size_t j = 0; j < train.dim; ++j) {
      params.min[j] = std::min(params.min[j], p.features[j]);
      params.max[j] = std::max(params.max[j], p.features[j]);
    }
  }
  return params;
}

Dataset apply_scaling(const ScalingParams& params, const Dataset& ds) {
  if (params.dim != ds.dim) {
    throw Error(ErrorKind::kDimensionMismatch, "apply_scaling: dimension " +
                                                   std::to_string(ds.dim) + " vs fitted " +
                                                   std::to_string(params.dim));
  }
  const double bound = 1.0 / static_cast<double>(params.dim);
  Dataset out = ds;
  for (auto& p : out.points) {
    for (std::size_t j = 0; j < params.dim; ++j) {
      const double range = params.max[j] - params.min[j];
      if (range <= 0.0) {
        p.features[j] = 0.0;
      } else {
        p.features[j] = bound * (2.0 * (p.features[j] - params.min[j]) / range - 1.0);
      }
    }
  }
  return out;
}

SplitResult split(const Dataset& ds, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0) ||
      !(spec.validation_fraction >= 0.0 && spec.validation_fraction < 1.0)) {
    throw Error(ErrorKind::kInvalidParameter, "split fractions out of range");
  }
  const std::size_t n = ds.size();
  const auto n_fit = static_cast<std::size_t>(std::floor(static_cast<double>(n) * spec.train_fraction));
  const auto n_val =
      static_cast<std::size_t>(std::floor(static_cast<double>(n_fit) * spec.validation_fraction));
  const std::size_t n_train = n_fit - n_val;
  const std::size_t n_test = n - n_fit;
  if (n_train == 0 || n_test == 0 || (spec.validation_fraction > 0.0 && n_val == 0)) {
    throw Error(ErrorKind::kTooSmall, "split of " + std::to_string(n) + " points leaves an empty part");
  }

  Rng rng(spec.seed);
  const auto perm = rng_shuffle(rng, n);
  SplitResult result;
  result.validation_indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_val));
  result.train_indices.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_val),
                              perm.begin() + static_cast<std::ptrdiff_t>(n_fit));
  result.test_indices.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_fit), perm.end());
  result.train = subset(ds, result.train_indices);
  result.validation = subset(ds, result.validation_indices);
  result.test = subset(ds, result.test_indices);
  return result;
}

std::pair<Dataset, Dataset> generate_rings(std::size_t n_train, std::size_t n_test,
                                           std::uint64_t seed) {
  if (n_train < 2 || n_test < 2) throw Error(ErrorKind::kTooSmall, "rings needs >= 2 points per set");
  constexpr double kInnerRadius = 1.0;
  constexpr double kOuterRadius = 2.0;
  constexpr double kNoise = 0.1;
  Rng rng(seed);
  auto draw = [&rng](std::size_t n, const char* name) {
    Dataset ds;
    ds.dim = 2;
    ds.name = name;
    ds.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int label = i % 2 == 0 ? 1 : -1;
      const double angle = 2.0 * std::numbers::pi * rng.uniform();
      const double radius = (label > 0 ? kInnerRadius : kOuterRadius) + kNoise * rng.normal();
      ds.points.push_back({{radius * std::cos(angle), radius * std::sin(angle)}, label});
    }
    return ds;
  };
  Dataset train = draw(n_train, "rings-train");
  Dataset test = draw(n_test, "rings-test");
  return {std::move(train), std::move(test)};
}

}  // namespace simgood

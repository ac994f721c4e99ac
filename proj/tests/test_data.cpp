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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "simgood/data.hpp"
#include "simgood/error.hpp"
#include "test_util.hpp"

using namespace simgood;

namespace {

Dataset parse(const std::string& text, DataFormat format, ParseOptions opts = {}) {
  std::istringstream in(text);
  return parse_dataset(in, format, opts);
}

template <class F>
std::pair<ErrorKind, std::size_t> line_error_of(F&& f) {
  try {
    f();
  } catch (const LineError& e) {
    return {e.kind(), e.line()};
  }
  FAIL("expected a LineError");
  return {};
}

Dataset line_dataset(std::initializer_list<double> values, std::size_t dim = 1) {
  Dataset ds;
  ds.dim = dim;
  for (double v : values) ds.points.push_back({Vector(dim, v), 1});
  return ds;
}

}  // namespace

TEST_CASE("parse sparse line") {
  const Dataset ds = parse("+1 1:0.5 3:-0.2\n", DataFormat::kSparse);
  REQUIRE(ds.size() == 1);
  CHECK(ds.dim == 3);
  CHECK(ds.points[0].features == Vector{0.5, 0.0, -0.2});
  CHECK(ds.points[0].label == 1);
}

TEST_CASE("parse csv line and label remapping") {
  const Dataset ds = parse("0.1,0.2,1\n0.3,0.4,0\n", DataFormat::kCsv);
  REQUIRE(ds.size() == 2);
  CHECK(ds.dim == 2);
  CHECK(ds.points[0].features == Vector{0.1, 0.2});
  CHECK(ds.points[0].label == 1);
  CHECK(ds.points[1].label == -1);

  const Dataset twelve = parse("1 1:1\n2 1:2\n", DataFormat::kSparse);
  CHECK(twelve.points[0].label == -1);
  CHECK(twelve.points[1].label == 1);
}

TEST_CASE("three labels is a LabelError at the offending line") {
  const auto [kind, line] =
      line_error_of([] { parse("# header\n0 1:1\n1 1:2\n2 1:3\n", DataFormat::kSparse); });
  CHECK(kind == ErrorKind::kLabel);
  CHECK(line == 4);
}

TEST_CASE("malformed inputs report the line") {
  CHECK(line_error_of([] { parse("1 1:0.5\n1 2:x\n", DataFormat::kSparse); }).second == 2);
  CHECK(line_error_of([] { parse("1 0:0.5\n", DataFormat::kSparse); }).first == ErrorKind::kParse);
  CHECK(line_error_of([] { parse("1 2:1 2:3\n", DataFormat::kSparse); }).first == ErrorKind::kParse);
  CHECK(line_error_of([] { parse("1,2,1\n1,1\n", DataFormat::kCsv); }).second == 2);
  CHECK(line_error_of([] { parse("# only comments\n", DataFormat::kSparse); }).first == ErrorKind::kParse);
}

TEST_CASE("comments, blank lines, id column and missing values") {
  ParseOptions opts;
  opts.drop_first_column = true;
  const Dataset ds = parse("# id,a,b,label\n\n1000,1,2,2\n1001,?,3,4\n1002,5,6,4\n", DataFormat::kCsv, opts);
  REQUIRE(ds.size() == 2);
  CHECK(ds.dim == 2);
  CHECK(ds.points[0].features == Vector{1, 2});
  CHECK(ds.points[0].label == -1);
  CHECK(ds.points[1].label == 1);
}

TEST_CASE("sparse format round trips exactly") {
  Rng rng(21);
  Dataset ds = testing::random_dataset(rng, 30, 5);
  ds.points[3].features[2] = 0.0;
  ds.points[4].features.assign(5, 0.0);
  std::stringstream buf;
  write_sparse(buf, ds);
  ParseOptions opts;
  opts.dim = 5;
  const Dataset back = parse_dataset(buf, DataFormat::kSparse, opts);
  REQUIRE(back.size() == ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(back.points[i].features == ds.points[i].features);
    CHECK(back.points[i].label == ds.points[i].label);
  }
}

TEST_CASE("scaling examples") {
  Dataset train;
  train.dim = 2;
  train.points = {{{0.0, 1.0}, 1}, {{10.0, 3.0}, -1}};
  const ScalingParams p = fit_scaling(train);
  Dataset probe;
  probe.dim = 2;
  probe.points = {{{5.0, 2.0}, 1}, {{10.0, 3.0}, 1}, {{0.0, 1.0}, 1}, {{12.0, 2.0}, 1}};
  const Dataset s = apply_scaling(p, probe);
  CHECK(s.points[0].features[0] == doctest::Approx(0.0));
  CHECK(s.points[1].features[0] == doctest::Approx(0.5));
  CHECK(s.points[2].features[0] == doctest::Approx(-0.5));
  CHECK(s.points[3].features[0] == doctest::Approx(0.7));

  const Dataset constant = line_dataset({4.0, 4.0});
  CHECK(apply_scaling(fit_scaling(constant), line_dataset({7.0})).points[0].features[0] == 0.0);

  CHECK_THROWS_AS(apply_scaling(p, line_dataset({1.0})), Error);
}

TEST_CASE("scaled fitting set lies in the box and the unit ball") {
  Rng rng(9);
  for (std::size_t d : {1u, 2u, 7u, 30u}) {
    Dataset ds = testing::random_dataset(rng, 50, d);
    for (auto& p : ds.points) {
      for (double& v : p.features) v = 100.0 * v + 3.0;
    }
    const Dataset s = apply_scaling(fit_scaling(ds), ds);
    const double bound = 1.0 / static_cast<double>(d);
    for (const auto& p : s.points) {
      for (double v : p.features) CHECK(std::abs(v) <= bound + 1e-15);
      CHECK(norm2(p.features) <= 1.0);
    }
  }
}

TEST_CASE("split sizes follow the floor rule") {
  Rng rng(1);
  const Dataset ten = testing::random_dataset(rng, 10, 2);
  const auto a = split(ten, SplitSpec{4, 0.7, 0.0});
  CHECK(a.train.size() == 7);
  CHECK(a.validation.size() == 0);
  CHECK(a.test.size() == 3);

  const Dataset hundred = testing::random_dataset(rng, 100, 2);
  const auto b = split(hundred, SplitSpec{4, 0.7, 0.3});
  CHECK(b.train.size() == 49);
  CHECK(b.validation.size() == 21);
  CHECK(b.test.size() == 30);

  const auto c = split(hundred, SplitSpec{4, 0.7, 0.3});
  CHECK(b.train_indices == c.train_indices);
  CHECK(b.validation_indices == c.validation_indices);
  CHECK(b.test_indices == c.test_indices);
}

TEST_CASE("split parts are a disjoint cover") {
  Rng rng(2);
  const Dataset ds = testing::random_dataset(rng, 57, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = split(ds, SplitSpec{seed, 0.7, 0.3});
    std::vector<std::size_t> all;
    for (const auto* part : {&s.train_indices, &s.validation_indices, &s.test_indices}) {
      all.insert(all.end(), part->begin(), part->end());
    }
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expected(ds.size());
    for (std::size_t i = 0; i < expected.size(); ++i) expected[i] = i;
    CHECK(all == expected);
    for (std::size_t k = 0; k < s.train_indices.size(); ++k) {
      CHECK(s.train.points[k].features == ds.points[s.train_indices[k]].features);
    }
  }
}

TEST_CASE("split errors") {
  Rng rng(3);
  const Dataset two = testing::random_dataset(rng, 2, 1);
  CHECK_THROWS_AS(split(two, SplitSpec{0, 0.3, 0.0}), Error);
  CHECK_THROWS_AS(split(two, SplitSpec{0, 1.5, 0.0}), Error);
  const Dataset five = testing::random_dataset(rng, 5, 1);
  CHECK_THROWS_AS(split(five, SplitSpec{0, 0.7, 0.1}), Error);
}

TEST_CASE("rings generator") {
  const auto [train, test] = generate_rings(700, 300, 5);
  CHECK(train.size() == 700);
  CHECK(test.size() == 300);
  CHECK(train.dim == 2);
  for (const auto* ds : {&train, &test}) {
    long balance = 0;
    for (const auto& p : ds->points) balance += p.label;
    CHECK(std::abs(balance) <= 1);
  }

  const auto [again, again_test] = generate_rings(700, 300, 5);
  for (std::size_t i = 0; i < train.size(); ++i) CHECK(again.points[i].features == train.points[i].features);

  // Radii of the inner ring over 10 seeds: 99% within 4 noise widths.
  std::size_t inside = 0;
  std::size_t total = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [tr, te] = generate_rings(700, 300, seed);
    for (const auto& p : tr.points) {
      if (p.label != 1) continue;
      ++total;
      inside += std::abs(norm2(p.features) - 1.0) <= 0.4;
    }
  }
  CHECK(static_cast<double>(inside) >= 0.99 * static_cast<double>(total));

  CHECK_THROWS_AS(generate_rings(1, 300, 0), Error);
}

TEST_CASE("guess_format by extension") {
  CHECK(guess_format("a/b.csv") == DataFormat::kCsv);
  CHECK(guess_format("wdbc.data") == DataFormat::kCsv);
  CHECK(guess_format("rings.txt") == DataFormat::kSparse);
  CHECK(guess_format("x.svm") == DataFormat::kSparse);
}

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
#include <vector>

namespace simgood {

// SplitMix64 generator: state += 0x9e3779b97f4a7c15, then a fixed
// xor-shift-multiply finalizer. Fixed here so splits reproduce on every
// platform; do not swap for std:: engines whose distributions vary by vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via Box-Muller; one draw per call, no cached spare.
  double normal();
  // Uniform integer in [0, n), rejection sampled so there is no modulo bias.
  std::uint64_t uniform_index(std::uint64_t n);

 private:
  std::uint64_t state_;
};

// Independent stream seed for (master, index) pairs.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> rng_shuffle(Rng& rng, std::size_t n);

}  // namespace simgood

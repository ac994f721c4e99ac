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

#include <cstdlib>
#include <cstring>

#include "simgood/simd.hpp"

namespace simgood::simd {
namespace detail {
#ifndef SIMGOOD_BUILD_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif
#ifndef SIMGOOD_BUILD_NEON
const KernelTable* neon_kernels() { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select_kernels() {
  const auto tables = supported_kernels();
  if (const char* forced = std::getenv("SIMGOOD_SIMD"); forced != nullptr && *forced != '\0') {
    for (const KernelTable* table : tables) {
      if (std::strcmp(table->name, forced) == 0) return *table;
    }
    return scalar_kernels();
  }
  return *tables.back();
}

}  // namespace

std::vector<const KernelTable*> supported_kernels() {
  std::vector<const KernelTable*> tables{&scalar_kernels()};
  if (const KernelTable* avx2 = detail::avx2_kernels(); avx2 != nullptr && cpu_has_avx2()) {
    tables.push_back(avx2);
  }
  // Advanced SIMD is mandatory on aarch64.
  if (const KernelTable* neon = detail::neon_kernels(); neon != nullptr) tables.push_back(neon);
  return tables;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_kernels();
  return table;
}

}  // namespace simgood::simd

// Copyright 2026 The Skillcast Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <string>

#include "skillcast/error.hpp"
#include "skillcast/kernels.hpp"

namespace skillcast::kernels {
namespace {

bool cpu_has(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(SKILLCAST_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(SKILLCAST_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& best_available() {
#if defined(SKILLCAST_HAVE_AVX2)
  if (cpu_has(Backend::kAvx2)) return detail::kAvx2Table;
#endif
#if defined(SKILLCAST_HAVE_NEON)
  return detail::kNeonTable;
#endif
  return detail::kScalarTable;
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("SKILLCAST_KERNELS"); env != nullptr && *env != '\0') {
    return &table(parse_backend(env));
  }
  return &best_available();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{initial_table()};
  return ptr;
}

}  // namespace

std::string_view name(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
  }
  return "unknown";
}

bool available(Backend backend) { return cpu_has(backend); }

const KernelTable& table(Backend backend) {
  if (!cpu_has(backend)) {
    fail(ErrorKind::kConfig, "kernel backend '" + std::string(name(backend)) + "' is not available");
  }
  switch (backend) {
#if defined(SKILLCAST_HAVE_AVX2)
    case Backend::kAvx2: return detail::kAvx2Table;
#endif
#if defined(SKILLCAST_HAVE_NEON)
    case Backend::kNeon: return detail::kNeonTable;
#endif
    default: return detail::kScalarTable;
  }
}

void select(Backend backend) { current().store(&table(backend)); }

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

Backend parse_backend(std::string_view text) {
  if (text == "scalar") return Backend::kScalar;
  if (text == "avx2") return Backend::kAvx2;
  if (text == "neon") return Backend::kNeon;
  fail(ErrorKind::kConfig, "unknown kernel backend '" + std::string(text) + "'");
}

}  // namespace skillcast::kernels

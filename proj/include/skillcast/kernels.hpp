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

#pragma once

// Inner-loop arithmetic shared by the neural layers, the skipgram trainer and
// k-means. Each kernel has a scalar reference implementation plus SIMD
// variants; one table is selected at startup from the CPU's capabilities
// (override with SKILLCAST_KERNELS=scalar|avx2|neon or kernels::select()).
//
// Element-wise kernels (axpy, adam_update) are bit-identical across backends.
// Reductions (dot, sum_sq_diff) differ only by summation order.

#include <cstddef>
#include <span>
#include <string_view>

namespace skillcast::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

struct AdamCoefficients {
  double lr;
  double beta1;
  double beta2;
  double one_minus_beta1;
  double one_minus_beta2;
  double bias_correction1;  // 1 - beta1^t
  double bias_correction2;  // 1 - beta2^t
  double eps;
};

struct KernelTable {
  Backend backend;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // sum_i (a_i - b_i)^2
  double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
  void (*adam_update)(double* param, const double* grad, double* m, double* v, std::size_t n,
                      const AdamCoefficients& c);
};

std::string_view name(Backend backend);
bool available(Backend backend);

// Throws kConfig if the backend is not compiled in or the CPU lacks it.
const KernelTable& table(Backend backend);
void select(Backend backend);
const KernelTable& active() noexcept;

// Parses "scalar" / "avx2" / "neon"; throws kConfig otherwise.
Backend parse_backend(std::string_view text);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  return active().sum_sq_diff(a.data(), b.data(), a.size());
}

namespace detail {
extern const KernelTable kScalarTable;
#if defined(SKILLCAST_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(SKILLCAST_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif
}  // namespace detail

}  // namespace skillcast::kernels

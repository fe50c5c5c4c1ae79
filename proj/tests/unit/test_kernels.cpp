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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "skillcast/error.hpp"
#include "skillcast/kernels.hpp"

using namespace skillcast;

namespace {

std::vector<kernels::Backend> simd_backends() {
  std::vector<kernels::Backend> out;
  for (auto b : {kernels::Backend::kAvx2, kernels::Backend::kNeon}) {
    if (kernels::available(b)) out.push_back(b);
  }
  return out;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::vector<double> v(n);
  oracle::fill_uniform(v, rng, -3.0, 3.0);
  return v;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(kernels::available(kernels::Backend::kScalar));
  CHECK(kernels::table(kernels::Backend::kScalar).backend == kernels::Backend::kScalar);
}

TEST_CASE("backend names parse back") {
  for (auto b : {kernels::Backend::kScalar, kernels::Backend::kAvx2, kernels::Backend::kNeon}) {
    CHECK(kernels::parse_backend(kernels::name(b)) == b);
  }
  CHECK_THROWS_AS(kernels::parse_backend("sse9"), Error);
}

TEST_CASE("unavailable backend is refused") {
  for (auto b : {kernels::Backend::kAvx2, kernels::Backend::kNeon}) {
    if (!kernels::available(b)) CHECK_THROWS_AS(kernels::table(b), Error);
  }
}

TEST_CASE("scalar kernels match textbook loops") {
  std::mt19937_64 rng(3);
  const auto a = random_vector(37, rng);
  const auto b = random_vector(37, rng);
  const auto& t = kernels::table(kernels::Backend::kScalar);
  double dot = 0.0, ssd = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    ssd += (a[i] - b[i]) * (a[i] - b[i]);
  }
  CHECK(t.dot(a.data(), b.data(), a.size()) == dot);
  CHECK(t.sum_sq_diff(a.data(), b.data(), a.size()) == ssd);
  auto y = b;
  t.axpy(0.5, a.data(), y.data(), y.size());
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(y[i] == b[i] + 0.5 * a[i]);
}

TEST_CASE("SIMD kernels agree with the scalar reference") {
  const auto& ref = kernels::table(kernels::Backend::kScalar);
  for (auto backend : simd_backends()) {
    const auto& simd = kernels::table(backend);
    CAPTURE(kernels::name(backend));
    std::mt19937_64 rng(11);
    // Lengths straddle every vector width and remainder.
    for (std::size_t n = 0; n <= 67; ++n) {
      CAPTURE(n);
      const auto a = random_vector(n, rng);
      const auto b = random_vector(n, rng);

      const double d_ref = ref.dot(a.data(), b.data(), n);
      const double d_simd = simd.dot(a.data(), b.data(), n);
      double scale = 1.0;
      for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i] * b[i]);
      CHECK(std::abs(d_ref - d_simd) <= 1e-13 * scale);

      const double s_ref = ref.sum_sq_diff(a.data(), b.data(), n);
      const double s_simd = simd.sum_sq_diff(a.data(), b.data(), n);
      CHECK(std::abs(s_ref - s_simd) <= 1e-13 * (1.0 + s_ref));

      auto y_ref = b;
      auto y_simd = b;
      ref.axpy(-0.37, a.data(), y_ref.data(), n);
      simd.axpy(-0.37, a.data(), y_simd.data(), n);
      CHECK(y_ref == y_simd);

      const kernels::AdamCoefficients c{1e-3, 0.9, 0.999, 0.1, 0.001, 1 - std::pow(0.9, 3), 1 - std::pow(0.999, 3), 1e-8};
      auto p_ref = a, m_ref = b, v_ref = b;
      for (auto& v : v_ref) v = v * v;
      auto p_simd = p_ref, m_simd = m_ref, v_simd = v_ref;
      const auto g = random_vector(n, rng);
      ref.adam_update(p_ref.data(), g.data(), m_ref.data(), v_ref.data(), n, c);
      simd.adam_update(p_simd.data(), g.data(), m_simd.data(), v_simd.data(), n, c);
      CHECK(p_ref == p_simd);
      CHECK(m_ref == m_simd);
      CHECK(v_ref == v_simd);
    }
  }
}

TEST_CASE("select switches the active table") {
  const auto before = kernels::active().backend;
  kernels::select(kernels::Backend::kScalar);
  CHECK(kernels::active().backend == kernels::Backend::kScalar);
  for (auto b : simd_backends()) {
    kernels::select(b);
    CHECK(kernels::active().backend == b);
  }
  kernels::select(before);
}

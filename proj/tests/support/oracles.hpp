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

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into the code under test except for plain data
// types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "skillcast/market_data.hpp"
#include "skillcast/matrix.hpp"
#include "skillcast/nn/tensor.hpp"

namespace oracle {

inline double relative_error(double analytic, double numeric) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
  return std::abs(analytic - numeric) / scale;
}

// Central difference of f with respect to every entry of `values`, which
// f reads through the captured reference.
inline std::vector<double> central_difference(std::span<double> values, const std::function<double()>& f,
                                              double eps = 1e-5) {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double keep = values[i];
    values[i] = keep + eps;
    const double up = f();
    values[i] = keep - eps;
    const double down = f();
    values[i] = keep;
    out[i] = (up - down) / (2.0 * eps);
  }
  return out;
}

inline double max_relative_error(std::span<const double> analytic, std::span<const double> numeric) {
  double worst = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) worst = std::max(worst, relative_error(analytic[i], numeric[i]));
  return worst;
}

inline void fill_uniform(std::span<double> values, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (auto& v : values) v = u(rng);
}

// Skill share of one cell by scanning every ad: mentions / ads in the
// occupation-month, times the occupation's employment share (both ratios
// formed first, then multiplied).
inline double brute_share(std::span<const skillcast::market::JobAdRecord> ads, double occupation_employment,
                          double total_employment, const std::string& skill, const std::string& occupation,
                          int month) {
  std::int64_t total = 0;
  std::int64_t hits = 0;
  for (const auto& ad : ads) {
    if (ad.occupation != occupation || ad.month != month) continue;
    ++total;
    if (std::find(ad.skills.begin(), ad.skills.end(), skill) != ad.skills.end()) ++hits;
  }
  if (total == 0) return std::nan("");
  const double mention_rate = static_cast<double>(hits) / static_cast<double>(total);
  const double employment_share = occupation_employment / total_employment;
  return mention_rate * employment_share;
}

// Linear interpolation of annual January anchors, flat outside.
inline double interpolate(const std::map<int, double>& by_year, int month_index) {
  const double year = 2010.0 + month_index / 12.0;
  if (year <= by_year.begin()->first) return by_year.begin()->second;
  if (year >= by_year.rbegin()->first) return by_year.rbegin()->second;
  auto hi = by_year.upper_bound(static_cast<int>(std::floor(year)));
  auto lo = std::prev(hi);
  const double f = (year - lo->first) / static_cast<double>(hi->first - lo->first);
  return lo->second + f * (hi->second - lo->second);
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
  }
  const double ma = sa / n, mb = sb / n;
  for (std::size_t i = 0; i < a.size(); ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
    sab += (a[i] - ma) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// 64-bit FNV-1a of a byte string.
inline std::uint64_t hash_bytes(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace oracle

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

#include "skillcast/month.hpp"

#include <charconv>
#include <cstdio>

#include "skillcast/error.hpp"

namespace skillcast {
namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

int month_index(int year, int month, MonthEpoch epoch) {
  return (year - epoch.year) * 12 + (month - epoch.month);
}

int year_of(int index, MonthEpoch epoch) {
  return epoch.year + floor_div(index + epoch.month - 1, 12);
}

int month_of_year(int index, MonthEpoch epoch) {
  const int zero_based = index + epoch.month - 1;
  return zero_based - 12 * floor_div(zero_based, 12) + 1;
}

std::string format_month(int index, MonthEpoch epoch) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year_of(index, epoch), month_of_year(index, epoch));
  return buf;
}

int parse_month(std::string_view text, MonthEpoch epoch) {
  auto bad = [&]() -> int {
    fail(ErrorKind::kInvalidInput, "malformed month '" + std::string(text) + "', expected YYYY-MM");
  };
  if (text.size() != 7 || text[4] != '-') return bad();
  int year = 0;
  int month = 0;
  auto [p1, e1] = std::from_chars(text.data(), text.data() + 4, year);
  auto [p2, e2] = std::from_chars(text.data() + 5, text.data() + 7, month);
  if (e1 != std::errc{} || e2 != std::errc{} || p1 != text.data() + 4 || p2 != text.data() + 7) return bad();
  if (month < 1 || month > 12) return bad();
  return month_index(year, month, epoch);
}

}  // namespace skillcast

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

#include <string>
#include <string_view>

namespace skillcast {

// Months are integer offsets from an epoch month; 2010-01 is index 0 by default.
struct MonthEpoch {
  int year = 2010;
  int month = 1;
};

int month_index(int year, int month, MonthEpoch epoch = {});
int year_of(int index, MonthEpoch epoch = {});
int month_of_year(int index, MonthEpoch epoch = {});

// "YYYY-MM" round trip. parse_month throws kInvalidInput on malformed text.
std::string format_month(int index, MonthEpoch epoch = {});
int parse_month(std::string_view text, MonthEpoch epoch = {});

// Contiguous, half-open range [first, first + count).
struct MonthRange {
  int first = 0;
  int count = 0;

  int end() const noexcept { return first + count; }
  int last() const noexcept { return first + count - 1; }
  bool contains(int m) const noexcept { return m >= first && m < first + count; }
  bool operator==(const MonthRange&) const = default;
};

}  // namespace skillcast

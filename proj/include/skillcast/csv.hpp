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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace skillcast::csv {

using Row = std::vector<std::string>;

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF tolerant.
// Blank lines are skipped. Throws kIo if the file cannot be opened.
std::vector<Row> read_file(const std::filesystem::path& path);
std::vector<Row> parse(std::string_view text);

std::string escape(std::string_view field);
std::string join(const Row& fields);

// Header check: throws kInvalidInput naming the file when the first row
// differs from the expected column names.
void expect_header(const std::vector<Row>& rows, const Row& header, std::string_view source);

std::vector<std::string> split(std::string_view text, char delimiter);

// printf("%.*g") with the requested significant digits.
std::string format_number(double value, int significant_digits = 10);

// Throws kInvalidInput with context when the field is not a number.
double parse_double(std::string_view field, std::string_view context);
long long parse_int(std::string_view field, std::string_view context);

void write_text(const std::filesystem::path& path, std::string_view contents);

}  // namespace skillcast::csv

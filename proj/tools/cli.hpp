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

// Command-line front end. run_cli is the whole program minus process
// plumbing so tests can drive every subcommand in-process.
//
// Exit codes: 0 success, 1 runtime or numeric failure, 2 usage, input or
// configuration error.

#include <iosfwd>
#include <string>
#include <vector>

#include "skillcast/error.hpp"

namespace skillcast::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

int exit_code_for(ErrorKind kind);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Chart of actual and forecast lines; exposed for tests.
std::string line_chart_svg(const std::string& title, const std::vector<std::string>& labels,
                           const std::vector<double>& actual, const std::vector<double>& forecast);

}  // namespace skillcast::cli

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

#include <stdexcept>
#include <string>
#include <string_view>

namespace skillcast {

enum class ErrorKind {
  kInvalidInput,
  kMissingOccupation,
  kUndefinedShare,
  kConstantSeries,
  kStateIncomplete,
  kShape,
  kConfig,
  kNumeric,
  kDivergence,
  kExperimentFailed,
  kUndefinedNormalization,
  kUndefinedMape,
  kUndefinedCorrelation,
  kUndefinedSimilarity,
  kInsufficientData,
  kCorpus,
  kVocabulary,
  kSpec,
  kIo,
};

std::string_view to_string(ErrorKind kind);

// All library failures surface as this one exception type; callers branch on
// kind() rather than on a class hierarchy.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace skillcast

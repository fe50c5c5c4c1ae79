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

#include "skillcast/error.hpp"

namespace skillcast {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kMissingOccupation: return "missing-occupation";
    case ErrorKind::kUndefinedShare: return "undefined-share";
    case ErrorKind::kConstantSeries: return "constant-series";
    case ErrorKind::kStateIncomplete: return "state-incomplete";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kNumeric: return "numeric";
    case ErrorKind::kDivergence: return "divergence";
    case ErrorKind::kExperimentFailed: return "experiment-failed";
    case ErrorKind::kUndefinedNormalization: return "undefined-normalization";
    case ErrorKind::kUndefinedMape: return "undefined-mape";
    case ErrorKind::kUndefinedCorrelation: return "undefined-correlation";
    case ErrorKind::kUndefinedSimilarity: return "undefined-similarity";
    case ErrorKind::kInsufficientData: return "insufficient-data";
    case ErrorKind::kCorpus: return "corpus";
    case ErrorKind::kVocabulary: return "vocabulary";
    case ErrorKind::kSpec: return "spec";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

}  // namespace skillcast

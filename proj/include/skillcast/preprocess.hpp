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

// Turns level panels into supervised windows and maps model outputs back to
// level space. The chain per series is
//
//   levels -> trailing moving average -> first difference -> z-score
//
// and the inverse un-scales predicted differences and cumulatively sums them
// from the last smoothed level before the forecast origin.
//
// Flattening convention (inputs and targets alike): time-major, then series.
// Element (step k, series s) of a row lives at column k * n_series + s.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "skillcast/market_data.hpp"
#include "skillcast/matrix.hpp"

namespace skillcast::prep {

// Where z-score statistics come from. kPerSegment fits training and test
// segments separately (the published protocol); kTrainSegment fits on the
// training segment only and reuses those statistics for the test segment.
enum class FitScope { kPerSegment, kTrainSegment };

std::string to_string(FitScope scope);
FitScope parse_fit_scope(const std::string& text);

struct PreprocessConfig {
  int smooth_window = 3;
  int lag = 12;
  int horizon = 12;
  // Trailing months held out; 0 means "same as horizon".
  int test_months = 0;
  FitScope fit_scope = FitScope::kPerSegment;

  int effective_test_months() const { return test_months == 0 ? horizon : test_months; }
  void validate() const;  // kConfig
};

// Trailing window: out[k] = mean(in[k .. k + w - 1]); length n - w + 1.
std::vector<double> moving_average(std::span<const double> series, int window);

struct Differenced {
  std::vector<double> values;  // out[k] = in[k + 1] - in[k]
  double anchor = 0.0;         // last input value
};
Differenced first_difference(std::span<const double> series);

struct Standardization {
  double mean = 0.0;
  double std = 1.0;  // population standard deviation
};

struct Standardized {
  std::vector<double> values;
  Standardization stats;
};

// Fits mean / population std on `series` itself. kConstantSeries on zero variance.
Standardized standardize(std::span<const double> series);
Standardization fit_standardization(std::span<const double> series);
std::vector<double> apply_standardization(std::span<const double> series, const Standardization& stats);
std::vector<double> invert_standardization(std::span<const double> scaled, const Standardization& stats);

struct WindowSet {
  Matrix inputs;   // samples x (lag * n_series)
  Matrix targets;  // samples x (horizon * n_series)
  std::size_t n_series = 0;
  int lag = 0;
  int horizon = 0;
  // Time index of the last input step of each sample (the forecast origin).
  std::vector<int> origins;

  std::size_t samples() const noexcept { return inputs.rows(); }
};

// `series` is time x n_series. One sample per origin with stride 1; sample
// count = length - lag - horizon + 1. `first_index` offsets the origins.
WindowSet make_windows(const Matrix& series, int lag, int horizon, int first_index = 0);

struct TransformState {
  std::vector<std::string> series_names;
  FitScope fit_scope = FitScope::kPerSegment;
  // Statistics used to scale model inputs (always the training segment).
  std::vector<Standardization> input_stats;
  // Statistics used to un-scale model outputs.
  std::vector<Standardization> output_stats;
  // Smoothed level at the forecast origin, one per series.
  std::vector<double> anchors;
  int smooth_window = 0;
  int lag = 0;
  int horizon = 0;
  // Leading samples consumed by smoothing (window - 1) and differencing (1).
  int smoothing_loss = 0;
  int differencing_loss = 0;

  std::size_t n_series() const noexcept { return series_names.size(); }
};

void to_json(nlohmann::json& j, const TransformState& state);
void from_json(const nlohmann::json& j, TransformState& state);

// `prediction` is one flattened row (horizon * n_series). Returns a
// horizon x n_series matrix of smoothed levels. kStateIncomplete when the
// state lacks statistics or anchors for any series; kShape on width mismatch.
Matrix inverse_transform(std::span<const double> prediction, const TransformState& state);

// Scales a time x n_series block of differences with the state's input stats.
Matrix scale_inputs(const Matrix& differences, const TransformState& state);

// Everything one train/evaluate run needs from a panel.
struct PreparedSplit {
  WindowSet train;
  // Last `lag` scaled training differences, flattened (1 x lag * n_series).
  std::vector<double> forecast_input;
  TransformState state;
  // horizon x n_series smoothed levels for the evaluated months.
  Matrix actual_levels;
  // horizon x n_series true test differences scaled with output_stats.
  Matrix test_scaled;
  std::vector<int> test_months;
  int forecast_origin = 0;  // month index of the last training month
};

PreparedSplit prepare(const market::SkillSharePanel& panel, const PreprocessConfig& config);

// Smoothed levels aligned to months: element k is the trailing mean ending at
// month first + (window - 1) + k.
Matrix smooth_panel(const Matrix& levels, int window);

}  // namespace skillcast::prep

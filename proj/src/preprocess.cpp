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

#include "skillcast/preprocess.hpp"

#include <cmath>

#include "skillcast/error.hpp"

namespace skillcast::prep {

std::string to_string(FitScope scope) {
  return scope == FitScope::kPerSegment ? "per-segment" : "train-segment";
}

FitScope parse_fit_scope(const std::string& text) {
  if (text == "per-segment") return FitScope::kPerSegment;
  if (text == "train-segment") return FitScope::kTrainSegment;
  fail(ErrorKind::kConfig, "unknown fit scope '" + text + "'");
}

void PreprocessConfig::validate() const {
  require(smooth_window >= 1, ErrorKind::kConfig, "smooth_window must be >= 1");
  require(lag >= 1, ErrorKind::kConfig, "lag must be >= 1");
  require(horizon >= 1, ErrorKind::kConfig, "horizon must be >= 1");
  require(test_months >= 0, ErrorKind::kConfig, "test_months must be >= 0");
  require(effective_test_months() >= horizon, ErrorKind::kConfig,
          "test_months must cover the forecast horizon");
}

std::vector<double> moving_average(std::span<const double> series, int window) {
  require(window >= 1, ErrorKind::kInvalidInput, "moving-average window must be >= 1");
  const auto w = static_cast<std::size_t>(window);
  require(series.size() >= w, ErrorKind::kInvalidInput,
          "series of length " + std::to_string(series.size()) + " is shorter than window " +
              std::to_string(window));
  std::vector<double> out(series.size() - w + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < w; ++i) s += series[k + i];
    out[k] = s / static_cast<double>(w);
  }
  return out;
}

Differenced first_difference(std::span<const double> series) {
  require(series.size() >= 2, ErrorKind::kInvalidInput, "differencing needs at least two values");
  Differenced out;
  out.values.resize(series.size() - 1);
  for (std::size_t k = 0; k + 1 < series.size(); ++k) out.values[k] = series[k + 1] - series[k];
  out.anchor = series.back();
  return out;
}

Standardization fit_standardization(std::span<const double> series) {
  require(!series.empty(), ErrorKind::kInvalidInput, "cannot standardize an empty series");
  const double n = static_cast<double>(series.size());
  double sum = 0.0;
  for (double v : series) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : series) ss += (v - mean) * (v - mean);
  const double std = std::sqrt(ss / n);
  require(std > 0.0 && std::isfinite(std), ErrorKind::kConstantSeries,
          "series has zero variance and cannot be standardized");
  return {mean, std};
}

std::vector<double> apply_standardization(std::span<const double> series, const Standardization& stats) {
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) out[i] = (series[i] - stats.mean) / stats.std;
  return out;
}

std::vector<double> invert_standardization(std::span<const double> scaled, const Standardization& stats) {
  std::vector<double> out(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) out[i] = scaled[i] * stats.std + stats.mean;
  return out;
}

Standardized standardize(std::span<const double> series) {
  const auto stats = fit_standardization(series);
  return {apply_standardization(series, stats), stats};
}

WindowSet make_windows(const Matrix& series, int lag, int horizon, int first_index) {
  require(lag >= 1 && horizon >= 1, ErrorKind::kInvalidInput, "lag and horizon must be >= 1");
  const auto length = series.rows();
  const auto need = static_cast<std::size_t>(lag + horizon);
  require(length >= need, ErrorKind::kInvalidInput,
          "series length " + std::to_string(length) + " < lag + horizon = " + std::to_string(need));
  const std::size_t n = series.cols();
  const std::size_t samples = length - need + 1;
  const auto L = static_cast<std::size_t>(lag);
  const auto H = static_cast<std::size_t>(horizon);

  WindowSet out;
  out.inputs = Matrix(samples, L * n);
  out.targets = Matrix(samples, H * n);
  out.n_series = n;
  out.lag = lag;
  out.horizon = horizon;
  out.origins.resize(samples);
  for (std::size_t r = 0; r < samples; ++r) {
    for (std::size_t k = 0; k < L; ++k) {
      for (std::size_t s = 0; s < n; ++s) out.inputs(r, k * n + s) = series(r + k, s);
    }
    for (std::size_t k = 0; k < H; ++k) {
      for (std::size_t s = 0; s < n; ++s) out.targets(r, k * n + s) = series(r + L + k, s);
    }
    out.origins[r] = first_index + static_cast<int>(r + L) - 1;
  }
  return out;
}

void to_json(nlohmann::json& j, const TransformState& state) {
  std::vector<double> means, stds, in_means, in_stds;
  for (const auto& s : state.output_stats) {
    means.push_back(s.mean);
    stds.push_back(s.std);
  }
  for (const auto& s : state.input_stats) {
    in_means.push_back(s.mean);
    in_stds.push_back(s.std);
  }
  j = nlohmann::json{{"series", state.series_names},
                     {"fit_scope", to_string(state.fit_scope)},
                     {"means", means},
                     {"stds", stds},
                     {"input_means", in_means},
                     {"input_stds", in_stds},
                     {"anchors", state.anchors},
                     {"window", state.smooth_window},
                     {"lag", state.lag},
                     {"horizon", state.horizon},
                     {"smoothing_loss", state.smoothing_loss},
                     {"differencing_loss", state.differencing_loss}};
}

void from_json(const nlohmann::json& j, TransformState& state) {
  state.series_names = j.at("series").get<std::vector<std::string>>();
  state.fit_scope = parse_fit_scope(j.at("fit_scope").get<std::string>());
  const auto means = j.at("means").get<std::vector<double>>();
  const auto stds = j.at("stds").get<std::vector<double>>();
  const auto in_means = j.at("input_means").get<std::vector<double>>();
  const auto in_stds = j.at("input_stds").get<std::vector<double>>();
  require(means.size() == stds.size() && in_means.size() == in_stds.size(), ErrorKind::kStateIncomplete,
          "transform state has mismatched mean/std arrays");
  state.output_stats.clear();
  state.input_stats.clear();
  for (std::size_t i = 0; i < means.size(); ++i) state.output_stats.push_back({means[i], stds[i]});
  for (std::size_t i = 0; i < in_means.size(); ++i) state.input_stats.push_back({in_means[i], in_stds[i]});
  state.anchors = j.at("anchors").get<std::vector<double>>();
  state.smooth_window = j.at("window").get<int>();
  state.lag = j.at("lag").get<int>();
  state.horizon = j.at("horizon").get<int>();
  state.smoothing_loss = j.value("smoothing_loss", state.smooth_window - 1);
  state.differencing_loss = j.value("differencing_loss", 1);
}

namespace {

void check_complete(const TransformState& state) {
  const auto n = state.n_series();
  require(n > 0, ErrorKind::kStateIncomplete, "transform state has no series");
  require(state.anchors.size() == n, ErrorKind::kStateIncomplete, "transform state is missing anchors");
  require(state.output_stats.size() == n, ErrorKind::kStateIncomplete,
          "transform state is missing output statistics");
  require(state.horizon >= 1, ErrorKind::kStateIncomplete, "transform state has no horizon");
}

}  // namespace

Matrix inverse_transform(std::span<const double> prediction, const TransformState& state) {
  check_complete(state);
  const std::size_t n = state.n_series();
  const auto H = static_cast<std::size_t>(state.horizon);
  require(prediction.size() == H * n, ErrorKind::kShape,
          "prediction width " + std::to_string(prediction.size()) + " != horizon * n_series = " +
              std::to_string(H * n));
  Matrix out(H, n);
  for (std::size_t s = 0; s < n; ++s) {
    double level = state.anchors[s];
    const auto& st = state.output_stats[s];
    for (std::size_t k = 0; k < H; ++k) {
      level += prediction[k * n + s] * st.std + st.mean;
      out(k, s) = level;
    }
  }
  return out;
}

Matrix scale_inputs(const Matrix& differences, const TransformState& state) {
  require(state.input_stats.size() == differences.cols(), ErrorKind::kStateIncomplete,
          "transform state is missing input statistics");
  Matrix out(differences.rows(), differences.cols());
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t s = 0; s < out.cols(); ++s) {
      out(r, s) = (differences(r, s) - state.input_stats[s].mean) / state.input_stats[s].std;
    }
  }
  return out;
}

Matrix smooth_panel(const Matrix& levels, int window) {
  require(levels.rows() >= static_cast<std::size_t>(window), ErrorKind::kInvalidInput,
          "panel shorter than smoothing window");
  Matrix out(levels.rows() - static_cast<std::size_t>(window) + 1, levels.cols());
  for (std::size_t s = 0; s < levels.cols(); ++s) {
    out.set_column(s, moving_average(levels.column(s), window));
  }
  return out;
}

PreparedSplit prepare(const market::SkillSharePanel& panel, const PreprocessConfig& config) {
  config.validate();
  const std::size_t T = panel.values.rows();
  const std::size_t n = panel.values.cols();
  const auto w = static_cast<std::size_t>(config.smooth_window);
  const auto split = static_cast<std::size_t>(config.effective_test_months());
  const auto H = static_cast<std::size_t>(config.horizon);
  const auto L = static_cast<std::size_t>(config.lag);
  require(n > 0, ErrorKind::kInvalidInput, "panel has no series");
  require(T > split + w, ErrorKind::kInvalidInput, "panel too short for the requested split");

  const Matrix smoothed = smooth_panel(panel.values, config.smooth_window);  // row k <-> month k + w - 1
  const std::size_t n_train = T - split - w;  // training differences: months w .. T - split - 1
  require(n_train >= L + H, ErrorKind::kInvalidInput,
          "training segment has " + std::to_string(n_train) + " differences; lag + horizon = " +
              std::to_string(L + H));

  PreparedSplit out;
  auto& state = out.state;
  state.series_names = panel.skills;
  state.fit_scope = config.fit_scope;
  state.smooth_window = config.smooth_window;
  state.lag = config.lag;
  state.horizon = config.horizon;
  state.smoothing_loss = config.smooth_window - 1;
  state.differencing_loss = 1;

  Matrix train_scaled(n_train, n);
  out.test_scaled = Matrix(H, n);
  out.actual_levels = Matrix(H, n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto diffs = first_difference(smoothed.column(s)).values;  // row k <-> month k + w
    const std::span<const double> train(diffs.data(), n_train);
    const std::span<const double> test(diffs.data() + n_train, split);

    const auto input_stats = fit_standardization(train);
    const auto output_stats = config.fit_scope == FitScope::kPerSegment ? fit_standardization(test) : input_stats;
    state.input_stats.push_back(input_stats);
    state.output_stats.push_back(output_stats);
    state.anchors.push_back(smoothed(n_train, s));  // month T - split - 1

    const auto scaled = apply_standardization(train, input_stats);
    train_scaled.set_column(s, scaled);
    for (std::size_t k = 0; k < H; ++k) {
      out.test_scaled(k, s) = (test[k] - output_stats.mean) / output_stats.std;
      out.actual_levels(k, s) = smoothed(n_train + 1 + k, s);
    }
  }

  const int first_diff_month = panel.months.first + static_cast<int>(w);
  out.train = make_windows(train_scaled, config.lag, config.horizon, first_diff_month);
  out.forecast_input.resize(L * n);
  for (std::size_t k = 0; k < L; ++k) {
    for (std::size_t s = 0; s < n; ++s) out.forecast_input[k * n + s] = train_scaled(n_train - L + k, s);
  }
  out.forecast_origin = panel.months.first + static_cast<int>(T - split) - 1;
  for (std::size_t k = 0; k < H; ++k) out.test_months.push_back(out.forecast_origin + 1 + static_cast<int>(k));
  return out;
}

}  // namespace skillcast::prep

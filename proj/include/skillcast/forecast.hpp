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

// Model assembly, training, one-shot forecasting and the experiment runners
// (multivariate, univariate with shared hyperparameters, univariate tuned,
// layer-depth study).
//
// Every grid point is an independent job. Jobs may run on several threads;
// results are stored by grid index and the winner is the point with the
// smallest mean NRMSE, ties going to the lexicographically smallest
// coordinates, so reports do not depend on the thread count.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "skillcast/market_data.hpp"
#include "skillcast/matrix.hpp"
#include "skillcast/nn/network.hpp"
#include "skillcast/preprocess.hpp"

namespace skillcast::forecast {

// --- training ------------------------------------------------------------------

struct TrainingConfig {
  int epochs = 100;
  double learning_rate = 1e-3;
  // 0 trains on every window per step.
  std::size_t batch_size = 0;
  // Global gradient-norm cap; <= 0 disables clipping.
  double clip_norm = 5.0;
  nn::NetworkOptions network{};
};

void to_json(nlohmann::json& j, const TrainingConfig& config);
void from_json(const nlohmann::json& j, TrainingConfig& config);

struct TrainedModel {
  nn::Network network;
  std::vector<double> loss_history;  // one entry per epoch
  std::uint64_t seed = 0;
  // "multivariate" or "univariate:<skill>"
  std::string mode = "multivariate";
  std::optional<prep::TransformState> state;
};

nn::Network build_model(const nn::ArchitectureSpec& spec, std::size_t n_series, int lag, int horizon,
                        std::uint64_t seed, const nn::NetworkOptions& options = {});

// Adam on the MSE loss. kShape when the windows do not fit the model;
// kDivergence naming the epoch when the loss or a gradient stops being finite.
TrainedModel train(nn::Network model, const prep::WindowSet& windows, const TrainingConfig& config,
                   std::uint64_t seed);

// One forward pass over a single lag window (lag * n_series values, time-major).
// Returns horizon x n_series in the transformed space.
Matrix forecast_one_shot(const nn::Network& model, std::span<const double> window);

// --- grids ---------------------------------------------------------------------

struct GridPoint {
  nn::ArchitectureSpec arch{};
  int lag = 12;
  int epochs = 100;
  std::uint64_t seed = 0;

  auto operator<=>(const GridPoint&) const = default;
  std::string label() const;
};

void to_json(nlohmann::json& j, const GridPoint& point);
void from_json(const nlohmann::json& j, GridPoint& point);

inline constexpr int kAllowedLags[] = {12, 24, 36};
inline constexpr int kAllowedEpochs[] = {50, 100, 500, 1000, 2000};
inline constexpr int kAllowedHorizons[] = {6, 12, 24, 36};
inline constexpr int kAllowedDepths[] = {1, 5, 10};

struct ExperimentGrid {
  std::vector<nn::ModelKind> kinds{nn::ModelKind::kLstm};
  std::vector<int> layers{1};
  std::vector<int> neurons{2};
  std::vector<int> kernels{};  // CNN_LSTM only
  std::vector<int> filters{};  // CNN_LSTM only; empty ties filters to neurons
  std::vector<int> lags{12};
  std::vector<int> epochs{100};
  std::vector<std::uint64_t> seeds{0};
  // Refuse to enumerate more points than this; 0 means no cap.
  std::size_t max_points = 0;

  // kConfig on an empty axis, a lag or epoch count outside the allowed sets,
  // an invalid architecture or a grid above max_points.
  void validate() const;
  // Full Cartesian product in ascending coordinate order, without duplicates.
  std::vector<GridPoint> points() const;
};

void to_json(nlohmann::json& j, const ExperimentGrid& grid);
void from_json(const nlohmann::json& j, ExperimentGrid& grid);

bool is_allowed_horizon(int horizon);

// --- experiments ---------------------------------------------------------------

struct ExperimentOptions {
  int horizon = 12;
  // lag and horizon are taken from each grid point / the horizon above.
  prep::PreprocessConfig preprocess{};
  // epochs is taken from each grid point.
  TrainingConfig training{};
  std::size_t jobs = 1;
  // Select on a validation split (the panel minus its test months) and
  // re-run the winner on the full panel. Off by default: selection on the
  // held-out horizon itself.
  bool validation_selection = false;
  std::string dataset = "dataset";
};

struct SkillForecast {
  std::string skill;
  std::vector<int> months;
  std::vector<double> predicted;  // smoothed level space
  std::vector<double> actual;     // smoothed level space
  double nrmse = 0.0;
  std::optional<double> mape;  // absent when an actual value is zero
  GridPoint config{};
};

struct GridOutcome {
  GridPoint point{};
  std::string scope;  // empty for joint searches, the skill for per-skill searches
  bool diverged = false;
  std::string error;
  double mean_nrmse = 0.0;
  double final_loss = 0.0;
};

struct ForecastReport {
  std::string experiment;  // multi | uni-shared | uni-tuned | single
  std::string dataset;
  int horizon = 0;
  std::vector<SkillForecast> skills;
  double mean_nrmse = 0.0;
  std::optional<double> mean_mape;
  // Winning configuration; absent for uni-tuned, where each skill has its own.
  std::optional<GridPoint> best;
  std::vector<GridOutcome> grid;
  std::size_t models_trained = 0;
};

// Train one configuration on the panel and evaluate it on the held-out months.
ForecastReport run_single(const market::SkillSharePanel& panel, const GridPoint& point,
                          const ExperimentOptions& options);

// kInvalidInput for fewer than two skills; kExperimentFailed when every grid
// point diverged.
ForecastReport run_experiment_multivariate(const market::SkillSharePanel& panel, const ExperimentGrid& grid,
                                           const ExperimentOptions& options);

// One univariate model per skill with the given configuration (same seed).
ForecastReport run_experiment_univariate_shared(const market::SkillSharePanel& panel, const GridPoint& point,
                                                const ExperimentOptions& options);

// Independent grid search per skill.
ForecastReport run_experiment_univariate_tuned(const market::SkillSharePanel& panel, const ExperimentGrid& grid,
                                               const ExperimentOptions& options);

struct DepthRow {
  nn::ModelKind kind{};
  int depth = 1;
  double mean_nrmse = 0.0;
  GridPoint best{};
};

// One multivariate search per (kind, depth), with the grid's layer axis
// replaced by the depth. kConfig for depths outside {1, 5, 10}.
std::vector<DepthRow> layer_depth_study(const market::SkillSharePanel& panel, std::span<const nn::ModelKind> kinds,
                                        std::span<const int> depths, const ExperimentGrid& grid,
                                        const ExperimentOptions& options);

// --- report files --------------------------------------------------------------

// dataset,experiment,horizon,skill,nrmse,mape,kind,layers,neurons,kernel,filters,lag,epochs,seed
// with a final "(mean)" row.
std::string report_to_csv(const ForecastReport& report);
// month,actual,predicted for one skill.
std::string predictions_to_csv(const SkillForecast& forecast, MonthEpoch epoch = {});
// scope,kind,layers,neurons,kernel,filters,lag,epochs,seed,status,mean_nrmse,final_loss
std::string grid_to_csv(std::span<const GridOutcome> grid);
// kind,depth,mean_nrmse,layers,neurons,kernel,filters,lag,epochs,seed
std::string depth_study_to_csv(std::span<const DepthRow> rows);
nlohmann::json report_to_json(const ForecastReport& report);

}  // namespace skillcast::forecast

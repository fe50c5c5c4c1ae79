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

#include "skillcast/forecast.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "skillcast/csv.hpp"
#include "skillcast/error.hpp"
#include "skillcast/metrics.hpp"
#include "skillcast/seed.hpp"

namespace skillcast::forecast {

namespace {

// Runs fn(0) .. fn(n - 1) on up to `jobs` threads. The first exception by
// index is rethrown after every job has finished.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t workers = std::min(std::max<std::size_t>(jobs, 1), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <typename T>
bool contains(std::span<const T> set, T value) {
  return std::find(set.begin(), set.end(), value) != set.end();
}

}  // namespace

// --- training ------------------------------------------------------------------

void to_json(nlohmann::json& j, const TrainingConfig& config) {
  j = nlohmann::json{{"epochs", config.epochs},
                     {"learning_rate", config.learning_rate},
                     {"batch_size", config.batch_size},
                     {"clip_norm", config.clip_norm},
                     {"forget_bias", config.network.forget_bias}};
}

void from_json(const nlohmann::json& j, TrainingConfig& config) {
  config.epochs = j.value("epochs", config.epochs);
  config.learning_rate = j.value("learning_rate", config.learning_rate);
  config.batch_size = j.value("batch_size", config.batch_size);
  config.clip_norm = j.value("clip_norm", config.clip_norm);
  config.network.forget_bias = j.value("forget_bias", config.network.forget_bias);
}

nn::Network build_model(const nn::ArchitectureSpec& spec, std::size_t n_series, int lag, int horizon,
                        std::uint64_t seed, const nn::NetworkOptions& options) {
  return nn::Network(spec, n_series, lag, horizon, seed, options);
}

TrainedModel train(nn::Network model, const prep::WindowSet& windows, const TrainingConfig& config,
                   std::uint64_t seed) {
  require(config.epochs >= 1, ErrorKind::kConfig, "epochs must be >= 1");
  require(config.learning_rate > 0.0, ErrorKind::kConfig, "learning rate must be positive");
  require(windows.inputs.cols() == model.input_width() && windows.targets.cols() == model.output_width(),
          ErrorKind::kShape, "window set does not match the model's input/output widths");
  require(windows.samples() > 0, ErrorKind::kInvalidInput, "window set is empty");

  nn::AdamConfig adam_config;
  adam_config.lr = config.learning_rate;
  auto params = model.parameters();
  auto adam = nn::make_adam_state(params, adam_config);

  const std::size_t samples = windows.samples();
  const std::size_t batch = config.batch_size == 0 ? samples : std::min(config.batch_size, samples);
  std::vector<std::size_t> order(samples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(derive_seed(seed, "batches"));

  TrainedModel out{model, {}, seed, "multivariate", std::nullopt};
  out.loss_history.reserve(static_cast<std::size_t>(config.epochs));
  nn::Network& net = out.network;
  params = net.parameters();

  auto step = [&](const Matrix& x, const Matrix& y, int epoch) {
    auto eval = net.evaluate(x, y);
    require(std::isfinite(eval.loss), ErrorKind::kDivergence,
            "training loss became non-finite at epoch " + std::to_string(epoch));
    if (config.clip_norm > 0.0) nn::clip_global_norm(eval.gradients, config.clip_norm);
    try {
      nn::adam_step(params, eval.gradients, adam);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNumeric) throw;
      fail(ErrorKind::kDivergence, "training diverged at epoch " + std::to_string(epoch) + ": " + e.what());
    }
    return eval.loss;
  };

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    if (batch == samples) {
      out.loss_history.push_back(step(windows.inputs, windows.targets, epoch));
      continue;
    }
    std::shuffle(order.begin(), order.end(), rng);
    double weighted = 0.0;
    for (std::size_t start = 0; start < samples; start += batch) {
      const std::size_t rows = std::min(batch, samples - start);
      Matrix x(rows, windows.inputs.cols());
      Matrix y(rows, windows.targets.cols());
      for (std::size_t r = 0; r < rows; ++r) {
        const auto xi = windows.inputs.row(order[start + r]);
        const auto yi = windows.targets.row(order[start + r]);
        std::copy(xi.begin(), xi.end(), x.row(r).begin());
        std::copy(yi.begin(), yi.end(), y.row(r).begin());
      }
      weighted += step(x, y, epoch) * static_cast<double>(rows);
    }
    out.loss_history.push_back(weighted / static_cast<double>(samples));
  }
  return out;
}

Matrix forecast_one_shot(const nn::Network& model, std::span<const double> window) {
  require(window.size() == model.input_width(), ErrorKind::kShape,
          "forecast window has " + std::to_string(window.size()) + " values, model expects " +
              std::to_string(model.input_width()));
  Matrix x(1, window.size());
  std::copy(window.begin(), window.end(), x.row(0).begin());
  const Matrix flat = model.predict(x);
  const std::size_t n = model.n_series();
  Matrix out(static_cast<std::size_t>(model.horizon()), n);
  for (std::size_t k = 0; k < out.rows(); ++k) {
    for (std::size_t s = 0; s < n; ++s) out(k, s) = flat(0, k * n + s);
  }
  return out;
}

// --- grids ---------------------------------------------------------------------

std::string GridPoint::label() const {
  std::ostringstream os;
  os << nn::to_string(arch.kind) << " layers=" << arch.layers << " neurons=" << arch.neurons;
  if (arch.kind == nn::ModelKind::kCnnLstm) os << " kernel=" << arch.kernel << " filters=" << arch.effective_filters();
  os << " lag=" << lag << " epochs=" << epochs << " seed=" << seed;
  return os.str();
}

void to_json(nlohmann::json& j, const GridPoint& point) {
  j = nlohmann::json{{"architecture", point.arch}, {"lag", point.lag}, {"epochs", point.epochs}, {"seed", point.seed}};
}

void from_json(const nlohmann::json& j, GridPoint& point) {
  point.arch = j.at("architecture").get<nn::ArchitectureSpec>();
  point.lag = j.at("lag").get<int>();
  point.epochs = j.at("epochs").get<int>();
  point.seed = j.at("seed").get<std::uint64_t>();
}

bool is_allowed_horizon(int horizon) { return contains<int>(kAllowedHorizons, horizon); }

void ExperimentGrid::validate() const {
  auto nonempty = [](bool ok, const char* axis) {
    require(ok, ErrorKind::kConfig, std::string("grid axis '") + axis + "' is empty");
  };
  nonempty(!kinds.empty(), "kinds");
  nonempty(!layers.empty(), "layers");
  nonempty(!neurons.empty(), "neurons");
  nonempty(!lags.empty(), "lags");
  nonempty(!epochs.empty(), "epochs");
  nonempty(!seeds.empty(), "seeds");
  if (std::find(kinds.begin(), kinds.end(), nn::ModelKind::kCnnLstm) != kinds.end()) nonempty(!kernels.empty(), "kernels");
  for (int l : lags) {
    require(contains<int>(kAllowedLags, l), ErrorKind::kConfig, "lag " + std::to_string(l) + " not in {12, 24, 36}");
  }
  for (int e : epochs) {
    require(contains<int>(kAllowedEpochs, e), ErrorKind::kConfig,
            "epoch count " + std::to_string(e) + " not in {50, 100, 500, 1000, 2000}");
  }
  std::size_t arch_count = 0;
  for (auto kind : kinds) {
    const bool cnn = kind == nn::ModelKind::kCnnLstm;
    arch_count += layers.size() * neurons.size() *
                  (cnn ? kernels.size() * std::max<std::size_t>(filters.size(), 1) : std::size_t{1});
  }
  const std::size_t total = arch_count * lags.size() * epochs.size() * seeds.size();
  require(max_points == 0 || total <= max_points, ErrorKind::kConfig,
          "grid has " + std::to_string(total) + " points, cap is " + std::to_string(max_points));
}

std::vector<GridPoint> ExperimentGrid::points() const {
  validate();
  std::vector<GridPoint> out;
  const std::vector<int> no_axis{0};
  for (auto kind : kinds) {
    const bool cnn = kind == nn::ModelKind::kCnnLstm;
    const auto& ks = cnn ? kernels : no_axis;
    const auto& fs = cnn && !filters.empty() ? filters : no_axis;
    for (int l : layers) {
      for (int n : neurons) {
        for (int k : ks) {
          for (int f : fs) {
            nn::ArchitectureSpec arch{kind, l, n, k, f};
            arch.validate();
            for (int lag : lags) {
              for (int e : epochs) {
                for (auto s : seeds) out.push_back({arch, lag, e, s});
              }
            }
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void to_json(nlohmann::json& j, const ExperimentGrid& grid) {
  std::vector<std::string> kinds;
  for (auto k : grid.kinds) kinds.push_back(nn::to_string(k));
  j = nlohmann::json{{"kinds", kinds},   {"layers", grid.layers}, {"neurons", grid.neurons},
                     {"kernels", grid.kernels}, {"filters", grid.filters}, {"lags", grid.lags},
                     {"epochs", grid.epochs},   {"seeds", grid.seeds},     {"max_points", grid.max_points}};
}

void from_json(const nlohmann::json& j, ExperimentGrid& grid) {
  if (j.contains("kinds")) {
    grid.kinds.clear();
    for (const auto& k : j.at("kinds")) grid.kinds.push_back(nn::parse_model_kind(k.get<std::string>()));
  }
  grid.layers = j.value("layers", grid.layers);
  grid.neurons = j.value("neurons", grid.neurons);
  grid.kernels = j.value("kernels", grid.kernels);
  grid.filters = j.value("filters", grid.filters);
  grid.lags = j.value("lags", grid.lags);
  grid.epochs = j.value("epochs", grid.epochs);
  grid.seeds = j.value("seeds", grid.seeds);
  grid.max_points = j.value("max_points", grid.max_points);
}

// --- experiments ---------------------------------------------------------------

namespace {

struct PointRun {
  std::vector<SkillForecast> skills;
  double mean_nrmse = 0.0;
  double final_loss = 0.0;
};

PointRun evaluate_point(const market::SkillSharePanel& panel, const GridPoint& point, const ExperimentOptions& options) {
  prep::PreprocessConfig pc = options.preprocess;
  pc.lag = point.lag;
  pc.horizon = options.horizon;
  const auto split = prep::prepare(panel, pc);

  TrainingConfig tc = options.training;
  tc.epochs = point.epochs;
  auto model = build_model(point.arch, panel.skills.size(), point.lag, options.horizon, point.seed, tc.network);
  auto trained = train(std::move(model), split.train, tc, point.seed);

  const auto scaled = forecast_one_shot(trained.network, split.forecast_input);
  const auto levels = prep::inverse_transform(scaled.data(), split.state);

  PointRun out;
  out.final_loss = trained.loss_history.back();
  double total = 0.0;
  for (std::size_t s = 0; s < panel.skills.size(); ++s) {
    SkillForecast f;
    f.skill = panel.skills[s];
    f.months = split.test_months;
    f.predicted = levels.column(s);
    f.actual = split.actual_levels.column(s);
    f.nrmse = metrics::nrmse(f.predicted, f.actual).value;
    try {
      f.mape = metrics::mape(f.predicted, f.actual).value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUndefinedMape) throw;
    }
    f.config = point;
    total += f.nrmse;
    out.skills.push_back(std::move(f));
  }
  out.mean_nrmse = total / static_cast<double>(out.skills.size());
  return out;
}

void summarize(ForecastReport& report) {
  double total = 0.0;
  double mape_total = 0.0;
  bool all_mape = true;
  for (const auto& s : report.skills) {
    total += s.nrmse;
    if (s.mape) {
      mape_total += *s.mape;
    } else {
      all_mape = false;
    }
  }
  const auto n = static_cast<double>(report.skills.size());
  report.mean_nrmse = total / n;
  if (all_mape) report.mean_mape = mape_total / n;
}

struct Search {
  std::vector<GridOutcome> outcomes;
  std::size_t winner = 0;
};

// Picks the smallest mean NRMSE; `points` is sorted, so strict comparison
// resolves ties toward the smallest coordinates.
std::size_t pick_winner(const std::vector<GridOutcome>& outcomes) {
  std::size_t best = outcomes.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].diverged) continue;
    if (best == outcomes.size() || outcomes[i].mean_nrmse < outcomes[best].mean_nrmse) best = i;
  }
  return best;
}

GridOutcome outcome_of(const market::SkillSharePanel& panel, const GridPoint& point, const ExperimentOptions& options,
                       const std::string& scope, PointRun* keep) {
  GridOutcome o;
  o.point = point;
  o.scope = scope;
  try {
    auto run = evaluate_point(panel, point, options);
    o.mean_nrmse = run.mean_nrmse;
    o.final_loss = run.final_loss;
    if (keep) *keep = std::move(run);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDivergence) throw;
    o.diverged = true;
    o.error = e.what();
  }
  return o;
}

market::SkillSharePanel selection_panel(const market::SkillSharePanel& panel, const ExperimentOptions& options) {
  if (!options.validation_selection) return panel;
  prep::PreprocessConfig pc = options.preprocess;
  pc.horizon = options.horizon;
  const auto held = static_cast<std::size_t>(pc.effective_test_months());
  require(panel.values.rows() > held, ErrorKind::kInvalidInput, "panel too short for a validation split");
  return panel.slice_months(0, panel.values.rows() - held);
}

void require_some_converged(const std::vector<GridOutcome>& outcomes, std::size_t winner, const std::string& what) {
  if (winner < outcomes.size()) return;
  std::string last = outcomes.empty() ? std::string("no grid points") : outcomes.back().point.label() + ": " + outcomes.back().error;
  fail(ErrorKind::kExperimentFailed, "every grid point diverged in " + what + " (last: " + last + ")");
}

}  // namespace

ForecastReport run_single(const market::SkillSharePanel& panel, const GridPoint& point,
                          const ExperimentOptions& options) {
  auto run = evaluate_point(panel, point, options);
  ForecastReport report;
  report.experiment = "single";
  report.dataset = options.dataset;
  report.horizon = options.horizon;
  report.skills = std::move(run.skills);
  report.best = point;
  report.grid.push_back({point, "", false, "", run.mean_nrmse, run.final_loss});
  report.models_trained = 1;
  summarize(report);
  return report;
}

ForecastReport run_experiment_multivariate(const market::SkillSharePanel& panel, const ExperimentGrid& grid,
                                           const ExperimentOptions& options) {
  require(panel.skills.size() >= 2, ErrorKind::kInvalidInput, "multivariate experiment needs at least two skills");
  const auto points = grid.points();
  const auto select_on = selection_panel(panel, options);
  const bool keep_runs = !options.validation_selection;

  std::vector<GridOutcome> outcomes(points.size());
  std::vector<PointRun> runs(keep_runs ? points.size() : 0);
  parallel_for(points.size(), options.jobs, [&](std::size_t i) {
    outcomes[i] = outcome_of(select_on, points[i], options, "", keep_runs ? &runs[i] : nullptr);
  });
  const auto winner = pick_winner(outcomes);
  require_some_converged(outcomes, winner, "the multivariate experiment");

  ForecastReport report;
  report.experiment = "multi";
  report.dataset = options.dataset;
  report.horizon = options.horizon;
  report.best = points[winner];
  report.grid = std::move(outcomes);
  report.models_trained = points.size();
  if (keep_runs) {
    report.skills = std::move(runs[winner].skills);
  } else {
    report.skills = evaluate_point(panel, points[winner], options).skills;
    ++report.models_trained;
  }
  summarize(report);
  return report;
}

ForecastReport run_experiment_univariate_shared(const market::SkillSharePanel& panel, const GridPoint& point,
                                                const ExperimentOptions& options) {
  require(!panel.skills.empty(), ErrorKind::kInvalidInput, "panel has no skills");
  const std::size_t n = panel.skills.size();
  std::vector<PointRun> runs(n);
  parallel_for(n, options.jobs, [&](std::size_t s) {
    const std::vector<std::string> one{panel.skills[s]};
    runs[s] = evaluate_point(panel.select(one), point, options);
  });
  ForecastReport report;
  report.experiment = "uni-shared";
  report.dataset = options.dataset;
  report.horizon = options.horizon;
  report.best = point;
  report.models_trained = n;
  for (std::size_t s = 0; s < n; ++s) {
    report.grid.push_back({point, panel.skills[s], false, "", runs[s].mean_nrmse, runs[s].final_loss});
    report.skills.push_back(std::move(runs[s].skills.front()));
  }
  summarize(report);
  return report;
}

ForecastReport run_experiment_univariate_tuned(const market::SkillSharePanel& panel, const ExperimentGrid& grid,
                                               const ExperimentOptions& options) {
  require(!panel.skills.empty(), ErrorKind::kInvalidInput, "panel has no skills");
  const auto points = grid.points();
  const std::size_t n = panel.skills.size();
  const std::size_t g = points.size();
  const bool keep_runs = !options.validation_selection;

  std::vector<market::SkillSharePanel> full(n), select_on(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::vector<std::string> one{panel.skills[s]};
    full[s] = panel.select(one);
    select_on[s] = selection_panel(full[s], options);
  }

  std::vector<GridOutcome> outcomes(n * g);
  std::vector<PointRun> runs(keep_runs ? n * g : 0);
  parallel_for(n * g, options.jobs, [&](std::size_t job) {
    const std::size_t s = job / g;
    const std::size_t p = job % g;
    outcomes[job] = outcome_of(select_on[s], points[p], options, panel.skills[s], keep_runs ? &runs[job] : nullptr);
  });

  ForecastReport report;
  report.experiment = "uni-tuned";
  report.dataset = options.dataset;
  report.horizon = options.horizon;
  report.models_trained = n * g;
  for (std::size_t s = 0; s < n; ++s) {
    const std::vector<GridOutcome> mine(outcomes.begin() + static_cast<std::ptrdiff_t>(s * g),
                                        outcomes.begin() + static_cast<std::ptrdiff_t>((s + 1) * g));
    const auto winner = pick_winner(mine);
    require_some_converged(mine, winner, "the tuned search for '" + panel.skills[s] + "'");
    if (keep_runs) {
      report.skills.push_back(std::move(runs[s * g + winner].skills.front()));
    } else {
      report.skills.push_back(evaluate_point(full[s], points[winner], options).skills.front());
      ++report.models_trained;
    }
  }
  report.grid = std::move(outcomes);
  summarize(report);
  return report;
}

std::vector<DepthRow> layer_depth_study(const market::SkillSharePanel& panel, std::span<const nn::ModelKind> kinds,
                                        std::span<const int> depths, const ExperimentGrid& grid,
                                        const ExperimentOptions& options) {
  require(!kinds.empty() && !depths.empty(), ErrorKind::kConfig, "depth study needs kinds and depths");
  for (int d : depths) {
    require(contains<int>(kAllowedDepths, d), ErrorKind::kConfig, "depth " + std::to_string(d) + " not in {1, 5, 10}");
  }
  std::vector<DepthRow> rows;
  for (auto kind : kinds) {
    for (int depth : depths) {
      ExperimentGrid g = grid;
      g.kinds = {kind};
      g.layers = {depth};
      const auto report = run_experiment_multivariate(panel, g, options);
      rows.push_back({kind, depth, report.mean_nrmse, *report.best});
    }
  }
  return rows;
}

// --- report files --------------------------------------------------------------

namespace {

std::string config_fields(const GridPoint& p) {
  std::ostringstream os;
  os << nn::to_string(p.arch.kind) << ',' << p.arch.layers << ',' << p.arch.neurons << ',' << p.arch.kernel << ','
     << (p.arch.kind == nn::ModelKind::kCnnLstm ? p.arch.effective_filters() : 0) << ',' << p.lag << ',' << p.epochs
     << ',' << p.seed;
  return os.str();
}

std::string optional_number(const std::optional<double>& v) { return v ? csv::format_number(*v) : std::string(); }

}  // namespace

std::string report_to_csv(const ForecastReport& report) {
  std::ostringstream os;
  os << "dataset,experiment,horizon,skill,nrmse,mape,kind,layers,neurons,kernel,filters,lag,epochs,seed\n";
  const std::string prefix = csv::escape(report.dataset) + ',' + report.experiment + ',' + std::to_string(report.horizon);
  for (const auto& s : report.skills) {
    os << prefix << ',' << csv::escape(s.skill) << ',' << csv::format_number(s.nrmse) << ',' << optional_number(s.mape)
       << ',' << config_fields(s.config) << '\n';
  }
  os << prefix << ",(mean)," << csv::format_number(report.mean_nrmse) << ',' << optional_number(report.mean_mape);
  if (report.best) {
    os << ',' << config_fields(*report.best) << '\n';
  } else {
    os << ",,,,,,,,\n";
  }
  return os.str();
}

std::string predictions_to_csv(const SkillForecast& forecast, MonthEpoch epoch) {
  std::ostringstream os;
  os << "month,actual,predicted\n";
  for (std::size_t k = 0; k < forecast.months.size(); ++k) {
    os << format_month(forecast.months[k], epoch) << ',' << csv::format_number(forecast.actual[k]) << ','
       << csv::format_number(forecast.predicted[k]) << '\n';
  }
  return os.str();
}

std::string grid_to_csv(std::span<const GridOutcome> grid) {
  std::ostringstream os;
  os << "scope,kind,layers,neurons,kernel,filters,lag,epochs,seed,status,mean_nrmse,final_loss\n";
  for (const auto& g : grid) {
    os << csv::escape(g.scope) << ',' << config_fields(g.point) << ',' << (g.diverged ? "diverged" : "ok") << ','
       << (g.diverged ? std::string() : csv::format_number(g.mean_nrmse)) << ','
       << (g.diverged ? std::string() : csv::format_number(g.final_loss)) << '\n';
  }
  return os.str();
}

std::string depth_study_to_csv(std::span<const DepthRow> rows) {
  std::ostringstream os;
  os << "kind,depth,mean_nrmse,best_kind,layers,neurons,kernel,filters,lag,epochs,seed\n";
  for (const auto& r : rows) {
    os << nn::to_string(r.kind) << ',' << r.depth << ',' << csv::format_number(r.mean_nrmse) << ','
       << config_fields(r.best) << '\n';
  }
  return os.str();
}

nlohmann::json report_to_json(const ForecastReport& report) {
  nlohmann::json skills = nlohmann::json::array();
  for (const auto& s : report.skills) {
    nlohmann::json j{{"skill", s.skill},         {"nrmse", s.nrmse},   {"months", s.months},
                     {"predicted", s.predicted}, {"actual", s.actual}, {"config", s.config}};
    j["mape"] = s.mape ? nlohmann::json(*s.mape) : nlohmann::json(nullptr);
    skills.push_back(std::move(j));
  }
  nlohmann::json doc{{"experiment", report.experiment},
                     {"dataset", report.dataset},
                     {"horizon", report.horizon},
                     {"mean_nrmse", report.mean_nrmse},
                     {"models_trained", report.models_trained},
                     {"skills", skills}};
  doc["mean_mape"] = report.mean_mape ? nlohmann::json(*report.mean_mape) : nlohmann::json(nullptr);
  doc["best"] = report.best ? nlohmann::json(*report.best) : nlohmann::json(nullptr);
  return doc;
}

}  // namespace skillcast::forecast

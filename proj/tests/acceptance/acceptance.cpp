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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_driver.hpp"
#include "corpus.hpp"
#include "gradcheck.hpp"
#include "oracles.hpp"
#include "skillcast/cluster.hpp"
#include "skillcast/forecast.hpp"
#include "skillcast/market_data.hpp"
#include "skillcast/metrics.hpp"
#include "skillcast/nn/adam.hpp"
#include "skillcast/preprocess.hpp"
#include "skillcast/synth.hpp"

using namespace skillcast;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

// --- shared benchmark -------------------------------------------------------------

constexpr std::uint64_t kBenchmarkSeed = 1;

// Three skills, coupling 0.8, trend plus 12-month seasonality, 120 months.
market::SkillSharePanel benchmark_panel() {
  synth::SynthSpec s;
  s.n_skills = 3;
  s.months = 120;
  s.seed = kBenchmarkSeed;
  s.base = {-2.5, -2.2, -2.8};
  s.trend = {0.004, 0.0024, -0.002};
  s.seasonal_amplitude = {0.3, 0.24, 0.36};
  s.seasonal_phase = {0.0, 0.1, 0.25};
  s.noise_std = {0.02};
  s.coupling = synth::uniform_coupling(3, 0.8);
  return synth::generate_panel(s).panel;
}

forecast::ExperimentGrid benchmark_grid(nn::ModelKind kind) {
  forecast::ExperimentGrid g;
  g.kinds = {kind};
  g.neurons = {2, 10};
  if (kind == nn::ModelKind::kCnnLstm) g.kernels = {3};
  g.lags = {12};
  g.epochs = {100, 500};
  g.seeds = {kBenchmarkSeed};
  return g;
}

// Hold out twelve months (train 108 / test 12), or the horizon when longer.
forecast::ExperimentOptions benchmark_options(int horizon) {
  forecast::ExperimentOptions o;
  o.horizon = horizon;
  o.preprocess.test_months = std::max(12, horizon);
  o.jobs = 1;
  o.dataset = "benchmark";
  return o;
}

// --- criteria --------------------------------------------------------------------

Verdict gradients() {
  const auto start = Clock::now();
  double worst_dense = 0, worst_lstm = 0, worst_gru = 0, worst_conv = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    worst_dense = std::max(worst_dense, gradcheck::dense(seed));
    worst_lstm = std::max(worst_lstm, gradcheck::lstm(seed));
    worst_gru = std::max(worst_gru, gradcheck::gru(seed));
    worst_conv = std::max(worst_conv, gradcheck::conv1d(seed));
  }
  const double elapsed = seconds_since(start);
  const double worst = std::max({worst_dense, worst_lstm, worst_gru, worst_conv});
  return {worst < 1e-4 && elapsed < 60.0,
          "20 seeds per layer, max rel err dense " + fmt(worst_dense, 2) + " lstm " + fmt(worst_lstm, 2) + " gru " +
              fmt(worst_gru, 2) + " conv " + fmt(worst_conv, 2) + ", " + fmt(elapsed, 3) + " s"};
}

Verdict optimizer() {
  nn::Tensor x({1}, std::vector<double>{1.0});
  std::vector<nn::ParamRef> params{{"x", &x}};
  nn::AdamConfig cfg;
  cfg.lr = 0.05;
  auto state = nn::make_adam_state(params, cfg);
  double first_error = 0.0;
  int reached = -1;
  for (int step = 1; step <= 500; ++step) {
    const double g = 2.0 * x[0];
    const double before = x[0];
    nn::adam_step(params, std::vector<nn::Tensor>{nn::Tensor({1}, std::vector<double>{g})}, state);
    if (step == 1) {
      const double m_hat = (1 - cfg.beta1) * g / (1 - cfg.beta1);
      const double v_hat = (1 - cfg.beta2) * g * g / (1 - cfg.beta2);
      first_error = std::abs(x[0] - (before - cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps)));
    }
    if (reached < 0 && std::abs(x[0]) < 1e-3) reached = step;
  }
  return {reached > 0 && first_error <= 1e-12 && std::abs(x[0]) < 1e-3,
          "|x| < 1e-3 first at step " + std::to_string(reached) + ", |x_500| = " + fmt(std::abs(x[0]), 3) +
              ", first-step error " + fmt(first_error, 2)};
}

struct AdFixture {
  std::vector<market::JobAdRecord> ads;
  std::vector<std::string> skills;
  std::vector<std::string> occupations;
  std::vector<market::OccupationEmployment> annual;
  MonthRange range{0, 14};
};

AdFixture ad_fixture(std::size_t n_ads, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AdFixture f;
  for (int i = 0; i < 20; ++i) f.skills.push_back("skill_" + std::to_string(i));
  for (int j = 0; j < 5; ++j) f.occupations.push_back("15-10" + std::to_string(10 + j));
  std::uniform_int_distribution<std::int64_t> emp(100, 5000);
  for (const auto& occ : f.occupations) {
    for (int year : {2010, 2011}) f.annual.push_back({occ, year, emp(rng)});
  }
  f.annual.push_back({"99-9999", 2010, 7000});  // employment without ads
  std::uniform_int_distribution<int> month(0, f.range.count - 1);
  std::uniform_int_distribution<std::size_t> occ(0, f.occupations.size() - 1);
  std::bernoulli_distribution mention(0.15);
  for (std::size_t a = 0; a < n_ads; ++a) {
    std::vector<std::string> s;
    for (const auto& k : f.skills) {
      if (mention(rng)) s.push_back(k);
    }
    if (s.empty()) s.push_back("other");
    f.ads.push_back(market::make_ad(std::to_string(a), month(rng), f.occupations[occ(rng)], s));
  }
  return f;
}

Verdict share_oracle() {
  std::size_t cells = 0, mismatches = 0;
  double additivity = 0.0;
  for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
    const auto f = ad_fixture(n, n);
    const auto emp = market::interpolate_employment(f.annual, f.range);
    const auto panel = market::build_panel(f.ads, emp, f.skills, f.occupations, f.range).panel;
    for (int m = 0; m < f.range.count; ++m) {
      for (std::size_t i = 0; i < f.skills.size(); ++i) {
        double expected = 0.0;
        for (const auto& occ : f.occupations) {
          const double cell = oracle::brute_share(f.ads, emp.at(occ, m), emp.total(m), f.skills[i], occ, m);
          if (!std::isnan(cell)) expected += cell;
        }
        ++cells;
        if (panel.values(static_cast<std::size_t>(m), i) != expected) ++mismatches;
      }
    }
    const std::vector<std::string> left(f.skills.begin(), f.skills.begin() + 7);
    const std::vector<std::string> right(f.skills.begin() + 7, f.skills.end());
    const auto a = market::aggregate_shares(panel, left);
    const auto b = market::aggregate_shares(panel, right);
    const auto all = market::aggregate_shares(panel, f.skills);
    for (std::size_t t = 0; t < all.size(); ++t) additivity = std::max(additivity, std::abs(a[t] + b[t] - all[t]));
  }
  return {mismatches == 0 && additivity <= 1e-12,
          std::to_string(cells) + " cells over fixtures of 10..10^4 ads, " + std::to_string(mismatches) +
              " mismatches, additivity error " + fmt(additivity, 2)};
}

Verdict roundtrip() {
  double worst = 0.0;
  int configs = 0;
  for (int lag : {12, 24, 36}) {
    for (int horizon : {6, 12, 24, 36}) {
      synth::SynthSpec s;
      s.n_skills = 3;
      s.months = 200;
      s.seed = static_cast<std::uint64_t>(lag * 100 + horizon);
      s.trend = {0.003};
      s.seasonal_amplitude = {0.2};
      s.noise_std = {0.05};
      const auto panel = synth::generate_panel(s).panel;
      prep::PreprocessConfig cfg;
      cfg.lag = lag;
      cfg.horizon = horizon;
      const auto split = prep::prepare(panel, cfg);
      const auto levels = prep::inverse_transform(split.test_scaled.data(), split.state);
      for (std::size_t k = 0; k < static_cast<std::size_t>(horizon); ++k) {
        const int m = split.test_months[k];
        for (std::size_t i = 0; i < 3; ++i) {
          const double smoothed = (panel.values(m - 2, i) + panel.values(m - 1, i) + panel.values(m, i)) / 3.0;
          worst = std::max(worst, std::abs(levels(k, i) - smoothed));
        }
      }
      ++configs;
    }
  }
  return {worst <= 1e-9, std::to_string(configs) + " (lag, horizon) configs, max level error " + fmt(worst, 2)};
}

Verdict benchmark(const market::SkillSharePanel& panel) {
  const auto start = Clock::now();
  const auto r = forecast::run_experiment_multivariate(panel, benchmark_grid(nn::ModelKind::kCnnLstm), benchmark_options(12));
  const double elapsed = seconds_since(start);
  return {r.mean_nrmse <= 0.35 && elapsed < 300.0,
          "CNN_LSTM h=12 mean NRMSE " + fmt(r.mean_nrmse) + " (best " + r.best->label() + "), " + fmt(elapsed, 3) +
              " s single-threaded"};
}

Verdict horizon_trend(const market::SkillSharePanel& panel) {
  bool pass = true;
  std::string detail;
  for (auto kind : {nn::ModelKind::kLstm, nn::ModelKind::kGru, nn::ModelKind::kCnnLstm}) {
    const auto g = benchmark_grid(kind);
    const double h6 = forecast::run_experiment_multivariate(panel, g, benchmark_options(6)).mean_nrmse;
    const double h36 = forecast::run_experiment_multivariate(panel, g, benchmark_options(36)).mean_nrmse;
    pass = pass && h6 <= h36;
    if (!detail.empty()) detail += "; ";
    detail += nn::to_string(kind) + " NRMSE(6) " + fmt(h6) + (h6 <= h36 ? " <= " : " > ") + "NRMSE(36) " + fmt(h36);
  }
  return {pass, detail};
}

Verdict dominance(const market::SkillSharePanel& panel) {
  forecast::ExperimentGrid g;
  g.kinds = {nn::ModelKind::kLstm, nn::ModelKind::kGru};
  g.neurons = {2, 10};
  g.lags = {12};
  g.epochs = {100};
  g.seeds = {kBenchmarkSeed};
  const auto opts = benchmark_options(12);
  const auto tuned = forecast::run_experiment_univariate_tuned(panel, g, opts);
  bool pass = g.points().size() == 4;
  double worst_shared = 0.0, best_shared = 1e300;
  for (const auto& p : g.points()) {
    const auto shared = forecast::run_experiment_univariate_shared(panel, p, opts);
    pass = pass && tuned.mean_nrmse <= shared.mean_nrmse;
    worst_shared = std::max(worst_shared, shared.mean_nrmse);
    best_shared = std::min(best_shared, shared.mean_nrmse);
    // Exhaustive per-skill argmin.
    for (const auto& s : tuned.skills) {
      const auto it = std::find_if(shared.skills.begin(), shared.skills.end(),
                                   [&](const auto& x) { return x.skill == s.skill; });
      pass = pass && it != shared.skills.end() && s.nrmse <= it->nrmse;
    }
  }
  return {pass, "4-point grid, tuned mean NRMSE " + fmt(tuned.mean_nrmse) + " vs shared " + fmt(best_shared) + ".." +
                    fmt(worst_shared)};
}

Verdict aggregation() {
  synth::SynthSpec s;
  s.n_skills = 50;
  s.months = 120;
  s.seed = kBenchmarkSeed;
  s.base = {-4.5};
  s.trend = {0.003};
  s.seasonal_amplitude = {0.2};
  s.noise_std = {0.15};
  s.noise_persistence = 0.3;
  const auto panel = synth::generate_panel(s).panel;

  market::SkillSharePanel total;
  total.skills = {"aggregate"};
  total.months = panel.months;
  total.values = Matrix(panel.values.rows(), 1);
  total.values.set_column(0, market::aggregate_shares(panel, panel.skills));

  // Both sides are grid-searched over the benchmark grid; each individual series gets its own best point.
  const auto grid = benchmark_grid(nn::ModelKind::kCnnLstm);
  const auto opts = benchmark_options(12);
  const auto individual = forecast::run_experiment_univariate_tuned(panel, grid, opts);
  const auto aggregate = forecast::run_experiment_univariate_tuned(total, grid, opts);
  return {aggregate.mean_nrmse < individual.mean_nrmse,
          "aggregate NRMSE " + fmt(aggregate.mean_nrmse) + " vs mean of 50 individual " + fmt(individual.mean_nrmse)};
}

Verdict coupling() {
  std::vector<metrics::CorrelationPoint> points;
  std::string detail;
  // 0.0 and 0.9 are the constructed pair; the report needs a third point.
  for (double c : {0.0, 0.45, 0.9}) {
    synth::SynthSpec s;
    s.n_skills = 3;
    s.months = 120;
    s.seed = kBenchmarkSeed;
    s.base = {-2.5};
    s.seasonal_amplitude = {0.05};
    s.noise_std = {0.15};
    s.noise_persistence = 0.9;
    s.coupling = synth::uniform_coupling(3, c);
    const auto panel = synth::generate_panel(s).panel;
    const auto r =
        forecast::run_experiment_multivariate(panel, benchmark_grid(nn::ModelKind::kCnnLstm), benchmark_options(12));
    const double mc = metrics::correlation_summary(panel).minimum;
    points.push_back({"coupling_" + fmt(c, 2), mc, r.mean_nrmse});
    detail += "c=" + fmt(c, 2) + " (min corr " + fmt(mc, 3) + ", NRMSE " + fmt(r.mean_nrmse, 3) + ") ";
  }
  const auto report = metrics::correlation_vs_error_report(points);
  return {report.slope < 0.0, detail + "slope " + fmt(report.slope)};
}

Verdict clustering() {
  const auto posts = corpus::postings(1300, 1);
  cluster::SkipgramConfig cfg;
  cfg.dim = 30;
  cfg.seed = 7;
  const auto e = cluster::train_skipgram(posts, cfg);
  const auto key = e.vector(corpus::kKey);
  const double companion = cluster::cosine_similarity(key, e.vector(corpus::kCompanion));
  double best_stranger = -1.0;
  for (const auto& s : e.vocab.skills()) {
    if (s == corpus::kKey || corpus::co_occur(posts, corpus::kKey, s)) continue;
    best_stranger = std::max(best_stranger, cluster::cosine_similarity(key, e.vector(s)));
  }
  bool monotone = true;
  std::size_t runs = 0;
  for (std::size_t k : {2u, 5u, 13u, 30u}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto km = cluster::kmeans(e.vectors, k, seed);
      for (std::size_t i = 1; i < km.objective_history.size(); ++i) {
        monotone = monotone && km.objective_history[i] <= km.objective_history[i - 1];
      }
      ++runs;
    }
  }
  return {companion > best_stranger && monotone,
          "companion cosine " + fmt(companion) + " vs best non-co-occurring " + fmt(best_stranger) +
              ", k-means objective non-increasing in " + std::to_string(runs) + " runs: " + (monotone ? "yes" : "no")};
}

// Runs every subcommand into `dir` with identical inputs.
bool cli_pipeline(const fs::path& dir, std::string& error) {
  auto step = [&](std::vector<std::string> args) {
    const auto r = driver::run(std::move(args));
    if (r.code != 0) error = r.err;
    return r.code == 0;
  };
  driver::spit(dir / "in" / "spec.json",
               R"({"n_skills": 3, "n_occupations": 2, "months": 96, "ads_per_occupation_month": 60,
                   "base": -1.5, "trend": [0.004, -0.002, 0.0], "seasonal_amplitude": 0.3,
                   "noise_std": 0.05, "coupling": 0.5})");
  const auto out = [&](const std::string& sub) { return (dir / "out" / sub).string(); };
  const std::string seed = "11";
  if (!step({"--seed", seed, "--out-dir", out("synth"), "synth", "--spec", (dir / "in" / "spec.json").string()})) return false;
  const auto ads = out("synth") + "/ads.csv", emp = out("synth") + "/employment.csv";
  const std::vector<std::string> subsets{"skill_00,skill_01,skill_02", "skill_00,skill_01", "skill_01,skill_02"};
  std::vector<std::string> summaries;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const auto name = "panel" + std::to_string(i);
    if (!step({"--seed", seed, "--out-dir", out("shares"), "shares", "--ads", ads, "--employment", emp, "--skills",
               subsets[i], "--out", out("shares") + "/" + name + ".csv"}))
      return false;
    driver::spit(dir / "in" / (name + ".json"),
                 nlohmann::json{{"dataset", name},
                                {"experiment", "multi"},
                                {"panel", out("shares") + "/" + name + ".csv"},
                                {"horizons", {6}},
                                {"grid", {{"kinds", {"LSTM", "GRU"}}, {"neurons", {2}}, {"epochs", {50}}}}}
                     .dump());
    if (!step({"--seed", seed, "--out-dir", out(name), "--config", (dir / "in" / (name + ".json")).string(),
               "experiment"}))
      return false;
    summaries.push_back(out(name) + "/summary_h6.json");
  }
  if (!step({"--seed", seed, "--out-dir", out("cluster"), "cluster", "--ads", ads, "--keys", "skill_00", "--size", "3",
             "--dim", "8", "--kmeans", "2"}))
    return false;
  std::vector<std::string> corr{"--seed", seed, "--out-dir", out("correlate"), "correlate"};
  corr.insert(corr.end(), summaries.begin(), summaries.end());
  return step(corr);
}

Verdict determinism() {
  const auto a = driver::scratch("acceptance_run_a");
  const auto b = driver::scratch("acceptance_run_b");
  std::string error;
  if (!cli_pipeline(a, error) || !cli_pipeline(b, error)) return {false, "pipeline failed: " + error};
  // Inputs embed run-specific absolute paths; only outputs are compared.
  const auto ha = driver::hash_tree(a / "out");
  const auto hb = driver::hash_tree(b / "out");
  std::size_t differing = 0;
  for (const auto& [name, hash] : ha) {
    const auto it = hb.find(name);
    if (it == hb.end() || it->second != hash) ++differing;
  }
  std::vector<std::string> commands;
  for (const auto& [name, hash] : ha) {
    const auto top = name.substr(0, name.find('/'));
    if (commands.empty() || commands.back() != top) commands.push_back(top);
  }
  return {differing == 0 && ha.size() == hb.size() && !ha.empty(),
          std::to_string(ha.size()) + " output files from synth, shares, experiment, cluster and correlate; " +
              std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  const auto panel = benchmark_panel();
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"gradient correctness", gradients},
      {"optimizer correctness", optimizer},
      {"skill-share oracle", share_oracle},
      {"preprocess roundtrip", roundtrip},
      {"synthetic benchmark", [&] { return benchmark(panel); }},
      {"horizon trend", [&] { return horizon_trend(panel); }},
      {"experiment-design dominance", [&] { return dominance(panel); }},
      {"aggregation smoothness", aggregation},
      {"coupling effect", coupling},
      {"clustering sanity", clustering},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

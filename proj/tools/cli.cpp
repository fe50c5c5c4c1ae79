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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skillcast/cluster.hpp"
#include "skillcast/csv.hpp"
#include "skillcast/forecast.hpp"
#include "skillcast/market_data.hpp"
#include "skillcast/metrics.hpp"
#include "skillcast/synth.hpp"

namespace skillcast::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNumeric:
    case ErrorKind::kDivergence:
    case ErrorKind::kExperimentFailed:
    case ErrorKind::kStateIncomplete:
    case ErrorKind::kShape:
    case ErrorKind::kUndefinedNormalization:
    case ErrorKind::kUndefinedMape:
    case ErrorKind::kUndefinedCorrelation:
    case ErrorKind::kUndefinedSimilarity:
      return kExitRuntime;
    default:
      return kExitUsage;
  }
}

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  std::string out_dir = ".";
  std::string config;
};

json read_json(const fs::path& path, const char* what) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kIo, std::string("cannot read ") + what + " '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, std::string("malformed ") + what + " '" + path.string() + "': " + e.what());
  }
}

void require_file(const std::string& path, const char* what) {
  require(!path.empty(), ErrorKind::kConfig, std::string("missing ") + what + " path");
  require(fs::is_regular_file(path), ErrorKind::kIo, std::string(what) + " '" + path + "' does not exist");
}

std::vector<std::string> non_empty(std::vector<std::string> items) {
  std::vector<std::string> out;
  for (auto& s : items) {
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

// Keeps file names portable; skills may contain spaces or slashes.
std::string file_token(const std::string& text) {
  std::string out;
  for (char c : text) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "_" : out;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void write(const fs::path& path, const std::string& text, std::ostream& out) {
  csv::write_text(path, text);
  out << "wrote " << path.generic_string() << '\n';
}

// --- synth ---------------------------------------------------------------------

struct SynthArgs {
  std::string spec;
};

int cmd_synth(const SynthArgs& args, const Globals& g, std::ostream& out) {
  const std::string spec_path = !args.spec.empty() ? args.spec : g.config;
  require(!spec_path.empty(), ErrorKind::kConfig, "synth needs --spec (or --config) naming a spec file");
  require(fs::is_regular_file(spec_path), ErrorKind::kIo, "spec file '" + spec_path + "' does not exist");
  auto spec = synth::read_spec(spec_path);
  if (g.seed) spec.seed = *g.seed;
  const auto generated = synth::generate_panel(spec);
  const auto corpus = synth::generate_ads(spec, generated.panel);
  const fs::path dir = g.out_dir;
  write(dir / "ads.csv", market::ads_to_csv(corpus.ads), out);
  write(dir / "employment.csv", market::employment_to_csv(corpus.employment), out);
  write(dir / "truth_panel.csv", market::panel_to_csv(generated.panel), out);
  return kExitOk;
}

// --- shares --------------------------------------------------------------------

struct SharesArgs {
  std::string ads;
  std::string employment;
  std::vector<std::string> skills;
  std::vector<std::string> occupations;
  std::string mode = "contemporaneous";
  std::string from;
  std::string to;
  std::string out;
};

int cmd_shares(SharesArgs args, const Globals& g, std::ostream& out) {
  args.skills = non_empty(args.skills);
  require(!args.skills.empty(), ErrorKind::kConfig, "skill list is empty; pass --skills a,b,...");
  require_file(args.ads, "ads file");
  require_file(args.employment, "employment file");
  market::PanelConfig config;
  config.mode = market::parse_employment_mode(args.mode);

  const auto ads = market::read_ads_csv(args.ads);
  const auto annual = market::read_employment_csv(args.employment);
  require(!ads.empty(), ErrorKind::kInvalidInput, "ads file '" + args.ads + "' has no records");

  auto occupations = non_empty(args.occupations);
  if (occupations.empty()) {
    std::set<std::string> all;
    for (const auto& row : annual) all.insert(row.occupation);
    occupations.assign(all.begin(), all.end());
  }
  int first = ads.front().month;
  int last = first;
  for (const auto& ad : ads) {
    first = std::min(first, ad.month);
    last = std::max(last, ad.month);
  }
  if (!args.from.empty()) first = parse_month(args.from);
  if (!args.to.empty()) last = parse_month(args.to);
  require(last >= first, ErrorKind::kConfig, "--to precedes --from");
  const MonthRange range{first, last - first + 1};

  // The fixed variant reads the base year's employment, which may lie
  // before the panel's first month.
  MonthRange emp_range = range;
  if (config.mode == market::EmploymentMode::kFixedBaseYear) {
    const int base = month_index(config.base_year, config.interpolation.anchor_month);
    const int lo = std::min(range.first, base);
    const int hi = std::max(range.last(), base);
    emp_range = {lo, hi - lo + 1};
  }
  const auto emp = market::interpolate_employment(annual, emp_range, config.interpolation);
  for (const auto& occ : occupations) {
    require(emp.has(occ), ErrorKind::kMissingOccupation, "occupation '" + occ + "' has no employment rows");
  }
  const auto built = market::build_panel(ads, emp, args.skills, occupations, range, config);
  const fs::path target = args.out.empty() ? fs::path(g.out_dir) / "panel.csv" : fs::path(args.out);
  write(target, market::panel_to_csv(built.panel), out);
  if (built.diagnostics.empty_occupation_months > 0) {
    out << "skipped " << built.diagnostics.empty_occupation_months << " occupation-months without ads\n";
  }
  return kExitOk;
}

// --- cluster -------------------------------------------------------------------

struct ClusterArgs {
  std::string ads;
  std::vector<std::string> keys;
  std::size_t size = cluster::kDefaultClusterSize;
  std::size_t dim = 30;
  int epochs = 5;
  int negatives = 5;
  std::size_t kmeans_k = 0;
};

int cmd_cluster(ClusterArgs args, const Globals& g, std::ostream& out) {
  require_file(args.ads, "ads file");
  args.keys = non_empty(args.keys);
  require(!args.keys.empty(), ErrorKind::kConfig, "cluster needs at least one --keys skill");
  const auto ads = market::read_ads_csv(args.ads);
  const auto postings = cluster::postings_from_ads(ads);

  // Check keys before training so a typo fails fast.
  const auto vocab = cluster::SkillVocabulary::from_postings(postings);
  for (const auto& key : args.keys) vocab.index(key);

  cluster::SkipgramConfig config;
  config.dim = args.dim;
  config.epochs = args.epochs;
  config.negatives = args.negatives;
  config.seed = g.seed.value_or(0);
  const auto embedding = cluster::train_skipgram(postings, config);
  const std::size_t size = std::min(args.size, embedding.vocab.size());

  const fs::path dir = g.out_dir;
  write(dir / "embedding.txt", cluster::embedding_to_text(embedding), out);

  std::vector<cluster::ClusterDataset> datasets;
  std::ostringstream report;
  report << "key_skill,rank,skill,similarity\n";
  for (const auto& key : args.keys) {
    datasets.push_back(cluster::build_cluster_dataset(embedding, key, size));
    write(dir / ("cluster_" + file_token(key) + ".csv"), cluster::cluster_to_csv(std::span(&datasets.back(), 1)), out);
    const auto full = cluster::build_cluster_dataset(embedding, key, embedding.vocab.size());
    for (std::size_t r = 1; r < full.members.size(); ++r) {
      report << csv::escape(key) << ',' << r << ',' << csv::escape(full.members[r].skill) << ','
             << csv::format_number(full.members[r].similarity, 17) << '\n';
    }
  }
  write(dir / "clusters.csv", cluster::cluster_to_csv(datasets), out);
  write(dir / "similarity_report.csv", report.str(), out);

  if (args.kmeans_k > 0) {
    const auto km = cluster::kmeans(embedding.vectors, args.kmeans_k, config.seed);
    std::ostringstream a;
    a << "skill,cluster\n";
    for (std::size_t i = 0; i < km.assignments.size(); ++i) {
      a << csv::escape(embedding.vocab.skill(i)) << ',' << km.assignments[i] << '\n';
    }
    write(dir / "kmeans.csv", a.str(), out);
    std::ostringstream h;
    h << "iteration,objective\n";
    for (std::size_t i = 0; i < km.objective_history.size(); ++i) {
      h << i + 1 << ',' << csv::format_number(km.objective_history[i], 17) << '\n';
    }
    write(dir / "kmeans_objective.csv", h.str(), out);
  }
  return kExitOk;
}

// --- experiment ----------------------------------------------------------------

struct ExperimentArgs {
  std::string experiment;
  std::string panel;
  std::string multi_report;
  std::vector<int> horizons;
};

struct ExperimentConfig {
  std::string dataset = "dataset";
  std::string experiment = "multi";
  fs::path panel;
  std::vector<int> horizons{12};
  forecast::ExperimentGrid grid;
  forecast::TrainingConfig training;
  prep::PreprocessConfig preprocess;
  bool validation_selection = false;
  std::optional<fs::path> multi_report;
  std::vector<nn::ModelKind> depth_kinds;
  std::vector<int> depths{1, 5, 10};
};

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  require(!path.empty(), ErrorKind::kConfig, "experiment needs --config naming an experiment file");
  require(fs::is_regular_file(path), ErrorKind::kIo, "experiment config '" + path + "' does not exist");
  const json j = read_json(path, "experiment config");
  const fs::path base = fs::path(path).parent_path();
  ExperimentConfig c;
  try {
    c.dataset = j.value("dataset", c.dataset);
    c.experiment = j.value("experiment", c.experiment);
    if (j.contains("panel")) c.panel = resolve(base, j.at("panel").get<std::string>());
    c.horizons = j.value("horizons", c.horizons);
    if (j.contains("grid")) c.grid = j.at("grid").get<forecast::ExperimentGrid>();
    if (j.contains("training")) c.training = j.at("training").get<forecast::TrainingConfig>();
    if (j.contains("preprocess")) {
      const auto& p = j.at("preprocess");
      c.preprocess.smooth_window = p.value("smooth_window", c.preprocess.smooth_window);
      c.preprocess.test_months = p.value("test_months", c.preprocess.test_months);
      if (p.contains("fit_scope")) c.preprocess.fit_scope = prep::parse_fit_scope(p.at("fit_scope").get<std::string>());
    }
    c.validation_selection = j.value("validation_selection", false);
    if (j.contains("multi_report")) c.multi_report = resolve(base, j.at("multi_report").get<std::string>());
    if (j.contains("depth_study")) {
      const auto& d = j.at("depth_study");
      for (const auto& k : d.value("kinds", std::vector<std::string>{})) c.depth_kinds.push_back(nn::parse_model_kind(k));
      c.depths = d.value("depths", c.depths);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, "invalid experiment config '" + path + "': " + e.what());
  }
  return c;
}

std::optional<double> min_correlation(const market::SkillSharePanel& panel) {
  if (panel.skills.size() < 2) return std::nullopt;
  try {
    return metrics::correlation_summary(panel).minimum;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUndefinedCorrelation) throw;
    return std::nullopt;
  }
}

forecast::GridPoint best_from_summary(const fs::path& path, int horizon) {
  fs::path file = path;
  if (fs::is_directory(path)) file = path / ("summary_h" + std::to_string(horizon) + ".json");
  require(fs::is_regular_file(file), ErrorKind::kConfig,
          "uni-shared needs a multivariate summary; '" + file.string() + "' does not exist");
  const json j = read_json(file, "multivariate summary");
  require(j.value("experiment", std::string()) == "multi", ErrorKind::kConfig,
          "'" + file.string() + "' is not a multivariate summary");
  require(j.contains("best") && !j.at("best").is_null(), ErrorKind::kConfig,
          "'" + file.string() + "' has no winning configuration");
  return j.at("best").get<forecast::GridPoint>();
}

void write_report_files(const forecast::ForecastReport& report, const market::SkillSharePanel& panel,
                        const fs::path& dir, std::ostream& out) {
  const std::string h = "h" + std::to_string(report.horizon);
  write(dir / ("report_" + h + ".csv"), forecast::report_to_csv(report), out);
  write(dir / ("grid_" + h + ".csv"), forecast::grid_to_csv(report.grid), out);

  std::vector<metrics::MetricRow> rows;
  for (const auto& s : report.skills) {
    rows.push_back({report.dataset, s.skill, metrics::nrmse(s.predicted, s.actual)});
    if (s.mape) rows.push_back({report.dataset, s.skill, metrics::mape(s.predicted, s.actual)});
    write(dir / ("predictions_" + h + "_" + file_token(s.skill) + ".csv"), forecast::predictions_to_csv(s), out);
    std::vector<std::string> labels;
    for (int m : s.months) labels.push_back(format_month(m));
    write(dir / ("chart_" + h + "_" + file_token(s.skill) + ".svg"),
          line_chart_svg(s.skill + " (" + std::to_string(report.horizon) + " months ahead)", labels, s.actual,
                         s.predicted),
          out);
  }
  write(dir / ("metrics_" + h + ".csv"), metrics::metrics_to_csv(rows), out);

  json summary = forecast::report_to_json(report);
  const auto mc = min_correlation(panel);
  summary["min_correlation"] = mc ? json(*mc) : json(nullptr);
  write(dir / ("summary_" + h + ".json"), summary.dump(2) + "\n", out);
}

int cmd_experiment(const ExperimentArgs& args, const Globals& g, std::ostream& out) {
  auto c = load_experiment_config(g.config);
  if (!args.experiment.empty()) c.experiment = args.experiment;
  if (!args.panel.empty()) c.panel = args.panel;
  if (!args.multi_report.empty()) c.multi_report = fs::path(args.multi_report);
  if (!args.horizons.empty()) c.horizons = args.horizons;
  if (g.seed) c.grid.seeds = {*g.seed};

  static const std::set<std::string> kinds{"multi", "uni-shared", "uni-tuned", "depth-study"};
  require(kinds.count(c.experiment) != 0, ErrorKind::kConfig,
          "unknown experiment '" + c.experiment + "'; expected multi, uni-shared, uni-tuned or depth-study");
  require(!c.horizons.empty(), ErrorKind::kConfig, "no horizons configured");
  for (int h : c.horizons) {
    require(forecast::is_allowed_horizon(h), ErrorKind::kConfig,
            "horizon " + std::to_string(h) + " not in {6, 12, 24, 36}");
  }
  // Validate everything cheap before any training starts.
  c.grid.validate();
  require(!c.panel.empty(), ErrorKind::kConfig, "experiment config names no panel");
  require(fs::is_regular_file(c.panel), ErrorKind::kIo, "panel file '" + c.panel.string() + "' does not exist");
  std::vector<forecast::GridPoint> shared(c.horizons.size());
  if (c.experiment == "uni-shared") {
    require(c.multi_report.has_value(), ErrorKind::kConfig,
            "uni-shared needs the multivariate result; pass --multi-report <summary.json or directory>");
    for (std::size_t i = 0; i < c.horizons.size(); ++i) shared[i] = best_from_summary(*c.multi_report, c.horizons[i]);
  }

  const auto panel = market::read_panel_csv(c.panel);
  const fs::path dir = g.out_dir;
  std::string combined;
  for (std::size_t i = 0; i < c.horizons.size(); ++i) {
    forecast::ExperimentOptions o;
    o.horizon = c.horizons[i];
    o.preprocess = c.preprocess;
    o.training = c.training;
    o.jobs = g.jobs;
    o.validation_selection = c.validation_selection;
    o.dataset = c.dataset;
    out << "running " << c.experiment << " for horizon " << o.horizon << '\n';

    if (c.experiment == "depth-study") {
      const auto study_kinds = c.depth_kinds.empty() ? c.grid.kinds : c.depth_kinds;
      const auto rows = forecast::layer_depth_study(panel, study_kinds, c.depths, c.grid, o);
      write(dir / ("depth_study_h" + std::to_string(o.horizon) + ".csv"), forecast::depth_study_to_csv(rows), out);
      continue;
    }
    forecast::ForecastReport report;
    if (c.experiment == "multi") {
      report = forecast::run_experiment_multivariate(panel, c.grid, o);
    } else if (c.experiment == "uni-shared") {
      report = forecast::run_experiment_univariate_shared(panel, shared[i], o);
    } else {
      report = forecast::run_experiment_univariate_tuned(panel, c.grid, o);
    }
    write_report_files(report, panel, dir, out);
    auto section = forecast::report_to_csv(report);
    if (!combined.empty()) section = section.substr(section.find('\n') + 1);
    combined += section;
    out << "mean NRMSE " << csv::format_number(report.mean_nrmse) << '\n';
  }
  if (!combined.empty()) write(dir / "report.csv", combined, out);
  return kExitOk;
}

// --- correlate -----------------------------------------------------------------

struct CorrelateArgs {
  std::vector<std::string> reports;
};

int cmd_correlate(const CorrelateArgs& args, const Globals& g, std::ostream& out) {
  std::vector<metrics::CorrelationPoint> points;
  for (const auto& path : args.reports) {
    require(fs::is_regular_file(path), ErrorKind::kIo, "report '" + path + "' does not exist");
    const json j = read_json(path, "experiment summary");
    require(j.contains("min_correlation") && j.at("min_correlation").is_number(), ErrorKind::kInvalidInput,
            "summary '" + path + "' carries no minimum correlation");
    require(j.contains("mean_nrmse"), ErrorKind::kInvalidInput, "summary '" + path + "' carries no mean NRMSE");
    points.push_back({j.value("dataset", path), j.at("min_correlation").get<double>(), j.at("mean_nrmse").get<double>()});
  }
  const auto report = metrics::correlation_vs_error_report(points);
  const fs::path dir = g.out_dir;
  write(dir / "correlation.csv", metrics::correlation_report_to_csv(report), out);
  write(dir / "correlation_fit.csv", metrics::correlation_fit_to_csv(report), out);
  out << "slope " << csv::format_number(report.slope) << '\n';
  return kExitOk;
}

}  // namespace

// --- chart ---------------------------------------------------------------------

std::string line_chart_svg(const std::string& title, const std::vector<std::string>& labels,
                           const std::vector<double>& actual, const std::vector<double>& forecast) {
  require(actual.size() == forecast.size() && labels.size() == actual.size() && !actual.empty(), ErrorKind::kShape,
          "chart series must be non-empty and aligned");
  const double width = 640, height = 320, left = 70, right = 20, top = 40, bottom = 50;
  double lo = std::min(*std::min_element(actual.begin(), actual.end()), *std::min_element(forecast.begin(), forecast.end()));
  double hi = std::max(*std::max_element(actual.begin(), actual.end()), *std::max_element(forecast.begin(), forecast.end()));
  if (hi - lo <= 0.0) {
    hi += 0.5;
    lo -= 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const std::size_t n = actual.size();
  auto x = [&](std::size_t i) {
    return n == 1 ? left + (width - left - right) / 2 : left + (width - left - right) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  auto y = [&](double v) { return top + (height - top - bottom) * (hi - v) / (hi - lo); };
  auto polyline = [&](const std::vector<double>& v, const char* colour, const char* cls) {
    std::string s = std::string("  <polyline class=\"") + cls + "\" fill=\"none\" stroke=\"" + colour +
                    "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      if (i) s += ' ';
      s += fixed(x(i)) + ',' + fixed(y(v[i]));
    }
    return s + "\"/>\n";
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <text x=\"" << fixed(width / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << xml_escape(title) << "</text>\n";
  os << "  <line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
     << height - bottom << "\" stroke=\"black\"/>\n";
  os << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
     << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    os << "  <text x=\"" << left - 6 << "\" y=\"" << fixed(y(v) + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << csv::format_number(v, 4) << "</text>\n";
  }
  const std::size_t step = std::max<std::size_t>(1, n / 6);
  for (std::size_t i = 0; i < n; i += step) {
    os << "  <text x=\"" << fixed(x(i)) << "\" y=\"" << height - bottom + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << xml_escape(labels[i]) << "</text>\n";
  }
  os << polyline(actual, "#1f77b4", "actual");
  os << polyline(forecast, "#d62728", "forecast");
  os << "  <text x=\"" << width - right - 120 << "\" y=\"" << height - 12
     << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#1f77b4\">actual</text>\n";
  os << "  <text x=\"" << width - right - 60 << "\" y=\"" << height - 12
     << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#d62728\">forecast</text>\n";
  os << "</svg>\n";
  return os.str();
}

// --- entry point ---------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Skill-demand forecasting: synthetic data, skill shares, clustering and experiments"};
  app.name("skillcast");
  app.require_subcommand(1, 1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random component");
  app.add_option("--jobs", g.jobs, "Worker threads for grid search")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", g.out_dir, "Output directory");
  app.add_option("--config", g.config, "Configuration file (experiment config, or synth spec)");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Generate ads.csv, employment.csv and the truth panel");
  synth_cmd->add_option("--spec", synth_args.spec, "Synthetic data spec (JSON)");

  SharesArgs shares_args;
  auto* shares_cmd = app.add_subcommand("shares", "Build a skill-share panel from ads and employment");
  shares_cmd->add_option("--ads", shares_args.ads, "ads.csv")->required();
  shares_cmd->add_option("--employment", shares_args.employment, "employment.csv")->required();
  shares_cmd->add_option("--skills", shares_args.skills, "Comma-separated skills")->delimiter(',');
  shares_cmd->add_option("--occupations", shares_args.occupations, "Comma-separated occupations (default: all)")
      ->delimiter(',');
  shares_cmd->add_option("--employment-mode", shares_args.mode, "contemporaneous or fixed2010");
  shares_cmd->add_option("--from", shares_args.from, "First month (YYYY-MM)");
  shares_cmd->add_option("--to", shares_args.to, "Last month (YYYY-MM)");
  shares_cmd->add_option("--out", shares_args.out, "Panel CSV path (default: <out-dir>/panel.csv)");

  ClusterArgs cluster_args;
  auto* cluster_cmd = app.add_subcommand("cluster", "Train skill embeddings and build cluster datasets");
  cluster_cmd->add_option("--ads", cluster_args.ads, "ads.csv")->required();
  cluster_cmd->add_option("--keys", cluster_args.keys, "Comma-separated key skills")->delimiter(',');
  cluster_cmd->add_option("--size", cluster_args.size, "Skills per dataset, key included")->check(CLI::PositiveNumber);
  cluster_cmd->add_option("--dim", cluster_args.dim, "Embedding size")->check(CLI::PositiveNumber);
  cluster_cmd->add_option("--epochs", cluster_args.epochs, "Skipgram epochs")->check(CLI::PositiveNumber);
  cluster_cmd->add_option("--negatives", cluster_args.negatives, "Negative samples per pair");
  cluster_cmd->add_option("--kmeans", cluster_args.kmeans_k, "Also run K-means with this k");

  ExperimentArgs exp_args;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a forecasting experiment");
  exp_cmd->add_option("--experiment", exp_args.experiment, "multi, uni-shared, uni-tuned or depth-study");
  exp_cmd->add_option("--panel", exp_args.panel, "Panel CSV (overrides the config)");
  exp_cmd->add_option("--multi-report", exp_args.multi_report, "Multivariate summary JSON or its directory");
  exp_cmd->add_option("--horizons", exp_args.horizons, "Comma-separated horizons")->delimiter(',');

  CorrelateArgs corr_args;
  auto* corr_cmd = app.add_subcommand("correlate", "Minimum correlation versus NRMSE across experiments");
  corr_cmd->add_option("reports", corr_args.reports, "summary_h*.json files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*synth_cmd) return cmd_synth(synth_args, g, out);
    if (*shares_cmd) return cmd_shares(shares_args, g, out);
    if (*cluster_cmd) return cmd_cluster(cluster_args, g, out);
    if (*exp_cmd) return cmd_experiment(exp_args, g, out);
    if (*corr_cmd) return cmd_correlate(corr_args, g, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace skillcast::cli

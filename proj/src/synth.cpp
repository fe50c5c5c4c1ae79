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

#include "skillcast/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "skillcast/error.hpp"
#include "skillcast/seed.hpp"

namespace skillcast::synth {

namespace {

void broadcast(std::vector<double>& v, std::size_t n, const char* what) {
  if (v.size() == 1 && n != 1) v.assign(n, v.front());
  require(v.size() == n, ErrorKind::kSpec,
          std::string(what) + " needs 1 or " + std::to_string(n) + " values, got " + std::to_string(v.size()));
}

}  // namespace

Matrix uniform_coupling(std::size_t n, double c) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = i == j ? 1.0 : c;
  }
  return m;
}

Matrix cholesky_psd(const Matrix& m) {
  const std::size_t n = m.rows();
  require(m.cols() == n, ErrorKind::kSpec, "coupling matrix must be square");
  const double tol = 1e-10;
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    require(d >= -tol, ErrorKind::kSpec, "coupling matrix is not positive semidefinite");
    const double pivot = d > tol ? std::sqrt(d) : 0.0;
    l(j, j) = pivot;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (pivot > 0.0) {
        l(i, j) = s / pivot;
      } else {
        // A zero pivot needs a zero residual column, otherwise m is indefinite.
        require(std::abs(s) <= 1e-8, ErrorKind::kSpec, "coupling matrix is not positive semidefinite");
      }
    }
  }
  return l;
}

SynthSpec SynthSpec::resolved() const {
  SynthSpec s = *this;
  require(s.n_skills >= 1, ErrorKind::kSpec, "n_skills must be >= 1");
  require(s.n_occupations >= 1, ErrorKind::kSpec, "n_occupations must be >= 1");
  if (s.skill_names.empty()) {
    for (std::size_t i = 0; i < s.n_skills; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "skill_%02zu", i);
      s.skill_names.emplace_back(buf);
    }
  }
  if (s.occupation_names.empty()) {
    for (std::size_t j = 0; j < s.n_occupations; ++j) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "15-%04zu", 1000 + j);
      s.occupation_names.emplace_back(buf);
    }
  }
  broadcast(s.base, s.n_skills, "base");
  broadcast(s.trend, s.n_skills, "trend");
  broadcast(s.seasonal_amplitude, s.n_skills, "seasonal_amplitude");
  broadcast(s.seasonal_phase, s.n_skills, "seasonal_phase");
  broadcast(s.noise_std, s.n_skills, "noise_std");
  broadcast(s.employment, s.n_occupations, "employment");
  broadcast(s.employment_growth, s.n_occupations, "employment_growth");
  broadcast(s.occupation_intensity, s.n_occupations, "occupation_intensity");
  if (s.coupling.rows() == 0) s.coupling = uniform_coupling(s.n_skills, 0.0);
  return s;
}

void SynthSpec::validate() const {
  const SynthSpec s = resolved();
  require(s.skill_names.size() == s.n_skills, ErrorKind::kSpec, "skill_names must have n_skills entries");
  require(s.occupation_names.size() == s.n_occupations, ErrorKind::kSpec,
          "occupation_names must have n_occupations entries");
  require(s.months >= 2, ErrorKind::kSpec, "months must be >= 2");
  require(s.seasonal_period >= 1, ErrorKind::kSpec, "seasonal_period must be >= 1");
  require(s.noise_persistence >= 0.0 && s.noise_persistence < 1.0, ErrorKind::kSpec,
          "noise_persistence must be in [0, 1)");
  require(s.scale > 0.0 && s.scale <= 1.0, ErrorKind::kSpec, "scale must be in (0, 1]");
  require(s.ads_per_occupation_month >= 1, ErrorKind::kSpec, "ads_per_occupation_month must be >= 1");
  for (double v : s.noise_std) require(v >= 0.0, ErrorKind::kSpec, "noise_std must be >= 0");
  for (double v : s.employment) require(v > 0.0, ErrorKind::kSpec, "employment must be positive");
  for (double v : s.employment_growth) require(v > -1.0, ErrorKind::kSpec, "employment_growth must exceed -1");
  for (double v : s.occupation_intensity) require(v > 0.0, ErrorKind::kSpec, "occupation_intensity must be positive");
  const Matrix& c = s.coupling;
  require(c.rows() == s.n_skills && c.cols() == s.n_skills, ErrorKind::kSpec,
          "coupling matrix must be n_skills x n_skills");
  for (std::size_t i = 0; i < s.n_skills; ++i) {
    require(c(i, i) == 1.0, ErrorKind::kSpec, "coupling matrix needs a unit diagonal");
    for (std::size_t j = 0; j < s.n_skills; ++j) {
      require(c(i, j) == c(j, i), ErrorKind::kSpec, "coupling matrix must be symmetric");
      require(c(i, j) >= -1.0 && c(i, j) <= 1.0, ErrorKind::kSpec, "coupling entries must lie in [-1, 1]");
    }
  }
  cholesky_psd(c);
}

void to_json(nlohmann::json& j, const SynthSpec& spec) {
  const SynthSpec s = spec.resolved();
  std::vector<std::vector<double>> coupling;
  for (std::size_t i = 0; i < s.coupling.rows(); ++i) {
    const auto r = s.coupling.row(i);
    coupling.emplace_back(r.begin(), r.end());
  }
  j = nlohmann::json{{"n_skills", s.n_skills},
                     {"n_occupations", s.n_occupations},
                     {"months", s.months},
                     {"first_month", s.first_month},
                     {"skill_names", s.skill_names},
                     {"occupation_names", s.occupation_names},
                     {"base", s.base},
                     {"trend", s.trend},
                     {"seasonal_amplitude", s.seasonal_amplitude},
                     {"seasonal_phase", s.seasonal_phase},
                     {"seasonal_period", s.seasonal_period},
                     {"noise_std", s.noise_std},
                     {"noise_persistence", s.noise_persistence},
                     {"scale", s.scale},
                     {"coupling", coupling},
                     {"ads_per_occupation_month", s.ads_per_occupation_month},
                     {"employment", s.employment},
                     {"employment_growth", s.employment_growth},
                     {"occupation_intensity", s.occupation_intensity},
                     {"seed", s.seed}};
}

void from_json(const nlohmann::json& j, SynthSpec& spec) {
  auto per_skill = [&](const char* key, std::vector<double>& out) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    out = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
  };
  spec.n_skills = j.value("n_skills", spec.n_skills);
  spec.n_occupations = j.value("n_occupations", spec.n_occupations);
  spec.months = j.value("months", spec.months);
  spec.first_month = j.value("first_month", spec.first_month);
  spec.skill_names = j.value("skill_names", spec.skill_names);
  spec.occupation_names = j.value("occupation_names", spec.occupation_names);
  if (!spec.skill_names.empty() && !j.contains("n_skills")) spec.n_skills = spec.skill_names.size();
  if (!spec.occupation_names.empty() && !j.contains("n_occupations")) spec.n_occupations = spec.occupation_names.size();
  per_skill("base", spec.base);
  per_skill("trend", spec.trend);
  per_skill("seasonal_amplitude", spec.seasonal_amplitude);
  per_skill("seasonal_phase", spec.seasonal_phase);
  per_skill("noise_std", spec.noise_std);
  per_skill("employment", spec.employment);
  per_skill("employment_growth", spec.employment_growth);
  per_skill("occupation_intensity", spec.occupation_intensity);
  spec.seasonal_period = j.value("seasonal_period", spec.seasonal_period);
  spec.noise_persistence = j.value("noise_persistence", spec.noise_persistence);
  spec.scale = j.value("scale", spec.scale);
  spec.ads_per_occupation_month = j.value("ads_per_occupation_month", spec.ads_per_occupation_month);
  spec.seed = j.value("seed", spec.seed);
  if (j.contains("coupling")) {
    const auto& c = j.at("coupling");
    if (c.is_number()) {
      spec.coupling = uniform_coupling(spec.n_skills, c.get<double>());
    } else {
      const auto rows = c.get<std::vector<std::vector<double>>>();
      spec.coupling = Matrix(rows.size(), rows.empty() ? 0 : rows.front().size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == spec.coupling.cols(), ErrorKind::kSpec, "coupling matrix rows differ in length");
        for (std::size_t k = 0; k < rows[r].size(); ++k) spec.coupling(r, k) = rows[r][k];
      }
    }
  }
}

SynthSpec read_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot read synth spec '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kSpec, "malformed synth spec '" + path.string() + "': " + e.what());
  }
  SynthSpec spec;
  try {
    spec = j.get<SynthSpec>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kSpec, "invalid synth spec '" + path.string() + "': " + e.what());
  }
  spec.validate();
  return spec;
}

SynthPanel generate_panel(const SynthSpec& input) {
  input.validate();
  const SynthSpec s = input.resolved();
  const std::size_t n = s.n_skills;
  const auto T = static_cast<std::size_t>(s.months);
  const Matrix l = cholesky_psd(s.coupling);

  SynthPanel out;
  out.latent = Matrix(T, n);
  out.trend = Matrix(T, n);
  out.seasonal = Matrix(T, n);
  out.noise = Matrix(T, n);
  out.panel.skills = s.skill_names;
  out.panel.months = {s.first_month, s.months};
  out.panel.values = Matrix(T, n);

  std::mt19937_64 rng(derive_seed(s.seed, "panel-noise"));
  std::normal_distribution<double> normal(0.0, 1.0);
  const double phi = s.noise_persistence;
  const double innovation = std::sqrt(1.0 - phi * phi);
  std::vector<double> z(n), prev(n, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    for (auto& v : z) v = normal(rng);
    for (std::size_t i = 0; i < n; ++i) {
      double lz = 0.0;
      for (std::size_t k = 0; k <= i; ++k) lz += l(i, k) * z[k];
      const double shock = s.noise_std[i] * lz;
      // The first draw comes from the stationary distribution.
      const double e = t == 0 ? shock : phi * prev[i] + innovation * shock;
      prev[i] = e;
      const double tt = static_cast<double>(t);
      const double season =
          s.seasonal_amplitude[i] *
          std::sin(2.0 * std::numbers::pi * (tt / static_cast<double>(s.seasonal_period) + s.seasonal_phase[i]));
      out.trend(t, i) = s.trend[i] * tt;
      out.seasonal(t, i) = season;
      out.noise(t, i) = e;
      out.latent(t, i) = s.base[i] + out.trend(t, i) + season + e;
      out.panel.values(t, i) = s.scale / (1.0 + std::exp(-out.latent(t, i)));
    }
  }
  return out;
}

SynthCorpus generate_ads(const SynthSpec& input, const market::SkillSharePanel& panel) {
  input.validate();
  const SynthSpec s = input.resolved();
  require(panel.skills.size() == s.n_skills, ErrorKind::kSpec, "panel and spec disagree on the number of skills");
  const std::size_t m = s.n_occupations;

  SynthCorpus out;
  out.occupations = s.occupation_names;
  const int first_year = year_of(panel.months.first);
  const int last_year = year_of(panel.months.last()) + 1;
  for (std::size_t j = 0; j < m; ++j) {
    for (int y = first_year; y <= last_year; ++y) {
      const double e = s.employment[j] * std::pow(1.0 + s.employment_growth[j], y - first_year);
      out.employment.push_back({s.occupation_names[j], y, static_cast<std::int64_t>(std::llround(e))});
    }
  }
  const auto emp = market::interpolate_employment(out.employment, panel.months);

  for (int month = panel.months.first; month < panel.months.end(); ++month) {
    const auto row = static_cast<std::size_t>(month - panel.months.first);
    const double total = emp.total(month);
    double weight = 0.0;
    for (std::size_t j = 0; j < m; ++j) weight += s.occupation_intensity[j] * emp.at(s.occupation_names[j], month) / total;
    std::mt19937_64 rng(derive_seed(s.seed, "ads-" + std::to_string(month)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t j = 0; j < m; ++j) {
      const double multiplier = s.occupation_intensity[j] / weight;
      std::vector<double> p(s.n_skills);
      for (std::size_t i = 0; i < s.n_skills; ++i) {
        p[i] = panel.values(row, i) * multiplier;
        require(p[i] >= 0.0 && p[i] <= 1.0, ErrorKind::kSpec,
                "mention probability " + std::to_string(p[i]) + " for '" + panel.skills[i] + "' in occupation '" +
                    s.occupation_names[j] + "' at " + format_month(month) + " is outside [0, 1]");
      }
      for (std::size_t a = 0; a < s.ads_per_occupation_month; ++a) {
        std::vector<std::string> skills;
        for (std::size_t i = 0; i < s.n_skills; ++i) {
          if (unit(rng) < p[i]) skills.push_back(panel.skills[i]);
        }
        if (skills.empty()) skills.emplace_back(kFillerSkill);
        std::string id = s.occupation_names[j] + "-" + format_month(month) + "-" + std::to_string(a);
        out.ads.push_back(market::make_ad(std::move(id), month, s.occupation_names[j], std::move(skills)));
      }
    }
  }
  return out;
}

}  // namespace skillcast::synth

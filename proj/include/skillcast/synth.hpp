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

// Synthetic skill-share panels and job-ad corpora.
//
// Latent demand per skill is
//
//   x_i(t) = base_i + trend_i * t + amp_i * sin(2 pi (t / period + phase_i)) + noise_i(t)
//
// with noise(t) = phi * noise(t - 1) + sqrt(1 - phi^2) * sigma * L z(t), where
// L L^T is the coupling matrix and z(t) is standard normal. The share is
// scale / (1 + exp(-x)). With phi = 0 the noise is white; any phi in [0, 1)
// keeps the noise variance at sigma^2 and its cross-correlations at the
// coupling matrix.
//
// Ads: in occupation j and month t each ad mentions skill i independently
// with probability share_i(t) * m_j(t), where the occupation multipliers are
// rescaled every month so that sum_j m_j(t) emp_j(t) / emp(t) = 1. Building
// a panel from the ads therefore reproduces the shares in expectation.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "skillcast/market_data.hpp"
#include "skillcast/matrix.hpp"

namespace skillcast::synth {

struct SynthSpec {
  std::size_t n_skills = 3;
  std::size_t n_occupations = 2;
  int months = 120;
  int first_month = 0;  // month index of the first generated month
  // Optional names; generated as skill_00.. / 15-1000.. when empty.
  std::vector<std::string> skill_names;
  std::vector<std::string> occupation_names;
  // Per-skill parameters; a single value is broadcast to every skill.
  std::vector<double> base{-3.0};
  std::vector<double> trend{0.0};
  std::vector<double> seasonal_amplitude{0.0};
  std::vector<double> seasonal_phase{0.0};  // fraction of a period
  std::vector<double> noise_std{0.0};
  int seasonal_period = 12;
  double noise_persistence = 0.0;  // phi
  double scale = 1.0;              // share upper bound
  // n_skills x n_skills; symmetric, unit diagonal, entries in [-1, 1], PSD.
  Matrix coupling;
  std::size_t ads_per_occupation_month = 200;
  // Per-occupation annual employment in the first year and yearly growth.
  std::vector<double> employment{1000.0};
  std::vector<double> employment_growth{0.0};
  // Relative skill intensity per occupation before the monthly rescaling.
  std::vector<double> occupation_intensity{1.0};
  std::uint64_t seed = 0;

  // Fills names, broadcasts scalars, defaults the coupling to identity.
  SynthSpec resolved() const;
  // kSpec on inconsistent sizes, a malformed coupling matrix, a non-PSD
  // coupling matrix, or out-of-range parameters.
  void validate() const;
};

// Uniform off-diagonal coupling c (unit diagonal).
Matrix uniform_coupling(std::size_t n, double c);

// Lower-triangular L with L L^T = m; semidefinite matrices are accepted.
// kSpec when m is not positive semidefinite.
Matrix cholesky_psd(const Matrix& m);

void to_json(nlohmann::json& j, const SynthSpec& spec);
// The coupling may be given as a full matrix or as one off-diagonal number.
void from_json(const nlohmann::json& j, SynthSpec& spec);
SynthSpec read_spec(const std::filesystem::path& path);

struct SynthPanel {
  market::SkillSharePanel panel;  // the generating shares
  Matrix latent;                  // months x n_skills
  Matrix trend;
  Matrix seasonal;
  Matrix noise;
};

SynthPanel generate_panel(const SynthSpec& spec);

struct SynthCorpus {
  std::vector<market::JobAdRecord> ads;
  std::vector<market::OccupationEmployment> employment;
  std::vector<std::string> occupations;
};

// Skill name used for ads that would otherwise mention no skill.
inline constexpr const char* kFillerSkill = "general";

// Ads for every occupation-month of the panel plus the annual employment rows
// they are weighted with. Months are generated from per-month derived seeds.
SynthCorpus generate_ads(const SynthSpec& spec, const market::SkillSharePanel& panel);

}  // namespace skillcast::synth

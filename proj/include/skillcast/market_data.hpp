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

// Job-ad ingestion, monthly employment interpolation and skill-share panels.
//
// For skill i, occupation j and month t the share is
//
//   share(i, j, t) = ads(i, j, t) / ads(j, t) * emp(j, t) / emp(t)
//
// where ads(i, j, t) counts ads mentioning the skill, ads(j, t) counts all
// ads in the occupation, emp(j, t) is the occupation's interpolated
// employment and emp(t) the sum over every occupation in the employment
// table. Panel cells sum this over the selected occupations.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "skillcast/matrix.hpp"
#include "skillcast/month.hpp"

namespace skillcast::market {

struct JobAdRecord {
  std::string ad_id;
  int month = 0;
  std::string occupation;
  // Sorted, unique, non-empty.
  std::vector<std::string> skills;

  bool mentions(const std::string& skill) const;
};

// Sorts and validates the skill list; throws kInvalidInput on an empty list
// or duplicate skill.
JobAdRecord make_ad(std::string ad_id, int month, std::string occupation,
                    std::vector<std::string> skills);

struct OccupationEmployment {
  std::string occupation;
  int year = 0;
  std::int64_t employment = 0;
};

struct MonthlyEmployment {
  std::string occupation;
  int month = 0;
  double employment = 0.0;
};

struct InterpolationConfig {
  MonthEpoch epoch{};
  // Calendar month (1-12) at which each annual figure is pinned.
  int anchor_month = 1;
};

// Piecewise-linear monthly employment per occupation: exact at anchor months,
// linear between adjacent anchors, constant beyond the outermost anchors.
class EmploymentTable {
 public:
  EmploymentTable() = default;
  EmploymentTable(MonthRange range, std::map<std::string, std::vector<double>> series);

  const MonthRange& range() const noexcept { return range_; }
  bool has(const std::string& occupation) const { return series_.count(occupation) != 0; }
  std::vector<std::string> occupations() const;

  // Throws kMissingOccupation / kInvalidInput (month outside range).
  double at(const std::string& occupation, int month) const;
  // Sum over every occupation in the table.
  double total(int month) const;

  std::vector<MonthlyEmployment> records() const;

 private:
  MonthRange range_{};
  std::map<std::string, std::vector<double>> series_;
  std::vector<double> totals_;
};

// Interpolates every occupation present in `annual`. Throws kInvalidInput on
// duplicate (occupation, year) rows or negative employment.
EmploymentTable interpolate_employment(std::span<const OccupationEmployment> annual, MonthRange range,
                                       const InterpolationConfig& config = {});

// Same, but throws kMissingOccupation when a requested occupation has no
// annual rows.
EmploymentTable interpolate_employment(std::span<const OccupationEmployment> annual,
                                       std::span<const std::string> occupations, MonthRange range,
                                       const InterpolationConfig& config = {});

enum class EmploymentMode { kContemporaneous, kFixedBaseYear };

std::string to_string(EmploymentMode mode);
// Accepts "contemporaneous" and "fixed2010" / "fixed_2010".
EmploymentMode parse_employment_mode(const std::string& text);

// Counting index over an ad list: total ads and per-skill mentions for each
// (occupation, month).
class AdIndex {
 public:
  explicit AdIndex(std::span<const JobAdRecord> ads);

  std::int64_t ads(const std::string& occupation, int month) const;
  std::int64_t mentions(const std::string& skill, const std::string& occupation, int month) const;

 private:
  struct Cell {
    std::int64_t total = 0;
    std::map<std::string, std::int64_t> by_skill;
  };
  std::map<std::pair<std::string, int>, Cell> cells_;
};

// Single-cell share. kUndefinedShare when the occupation has no ads that month
// (a legitimate 0.0 is returned when ads exist but none mention the skill);
// kInvalidInput when total employment is zero.
double compute_skill_share(const AdIndex& index, const EmploymentTable& emp, const std::string& skill,
                           const std::string& occupation, int month);
double compute_skill_share(std::span<const JobAdRecord> ads, const EmploymentTable& emp,
                           const std::string& skill, const std::string& occupation, int month);

struct SkillSharePanel {
  std::vector<std::string> skills;
  MonthRange months{};
  Matrix values;  // months.count x skills.size()
  EmploymentMode employment_mode = EmploymentMode::kContemporaneous;

  std::size_t skill_index(const std::string& skill) const;  // kInvalidInput if absent
  std::vector<double> series(const std::string& skill) const;
  // Panel restricted to the given skills (in that order).
  SkillSharePanel select(std::span<const std::string> subset) const;
  // Rows [first, first + count) relative to the panel start.
  SkillSharePanel slice_months(std::size_t first, std::size_t count) const;
};

struct PanelDiagnostics {
  // (occupation, month) cells skipped because the occupation had no ads.
  std::int64_t empty_occupation_months = 0;
};

struct PanelBuild {
  SkillSharePanel panel;
  PanelDiagnostics diagnostics;
};

struct PanelConfig {
  EmploymentMode mode = EmploymentMode::kContemporaneous;
  // Base year of the fixed-employment variant; its anchor month's employment
  // ratio is used for every month.
  int base_year = 2010;
  InterpolationConfig interpolation{};
};

// Cells are summed over occupations in the given order, so the result does not
// depend on how the work is partitioned.
PanelBuild build_panel(std::span<const JobAdRecord> ads, const EmploymentTable& emp,
                       std::span<const std::string> skills, std::span<const std::string> occupations,
                       MonthRange range, const PanelConfig& config = {});

// Element-wise sum of the member columns. kInvalidInput on an empty subset or
// unknown skill.
std::vector<double> aggregate_shares(const SkillSharePanel& panel, std::span<const std::string> subset);

// Cell-wise sum of panels built over disjoint occupation groups; panels must
// share skills and months.
SkillSharePanel aggregate_occupation_panels(std::span<const SkillSharePanel> panels);

// --- file formats -----------------------------------------------------------

// ads.csv: ad_id,month,soc,skills  (month YYYY-MM, skills ';'-separated)
std::vector<JobAdRecord> read_ads_csv(const std::filesystem::path& path, MonthEpoch epoch = {});
std::string ads_to_csv(std::span<const JobAdRecord> ads, MonthEpoch epoch = {});

// employment.csv: soc,year,employment
std::vector<OccupationEmployment> read_employment_csv(const std::filesystem::path& path);
std::string employment_to_csv(std::span<const OccupationEmployment> rows);

// panel CSV: month,<skill_1>,...,<skill_n>; values with 10 significant digits.
std::string panel_to_csv(const SkillSharePanel& panel, MonthEpoch epoch = {});
SkillSharePanel read_panel_csv(const std::filesystem::path& path, MonthEpoch epoch = {});

}  // namespace skillcast::market

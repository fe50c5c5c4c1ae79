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

#include "skillcast/market_data.hpp"

#include <algorithm>
#include <set>

#include "skillcast/csv.hpp"
#include "skillcast/error.hpp"

namespace skillcast::market {

bool JobAdRecord::mentions(const std::string& skill) const {
  return std::binary_search(skills.begin(), skills.end(), skill);
}

JobAdRecord make_ad(std::string ad_id, int month, std::string occupation,
                    std::vector<std::string> skills) {
  require(!skills.empty(), ErrorKind::kInvalidInput, "ad '" + ad_id + "' has no skills");
  std::sort(skills.begin(), skills.end());
  const auto dup = std::adjacent_find(skills.begin(), skills.end());
  require(dup == skills.end(), ErrorKind::kInvalidInput,
          "ad '" + ad_id + "' lists skill '" + (dup == skills.end() ? "" : *dup) + "' twice");
  return JobAdRecord{std::move(ad_id), month, std::move(occupation), std::move(skills)};
}

// --- employment ---------------------------------------------------------------

EmploymentTable::EmploymentTable(MonthRange range, std::map<std::string, std::vector<double>> series)
    : range_(range), series_(std::move(series)), totals_(static_cast<std::size_t>(range.count), 0.0) {
  for (const auto& [occ, values] : series_) {
    require(values.size() == totals_.size(), ErrorKind::kShape,
            "employment series for '" + occ + "' does not cover the month range");
    for (std::size_t k = 0; k < values.size(); ++k) totals_[k] += values[k];
  }
}

std::vector<std::string> EmploymentTable::occupations() const {
  std::vector<std::string> out;
  out.reserve(series_.size());
  for (const auto& [occ, values] : series_) out.push_back(occ);
  return out;
}

double EmploymentTable::at(const std::string& occupation, int month) const {
  const auto it = series_.find(occupation);
  require(it != series_.end(), ErrorKind::kMissingOccupation,
          "no employment data for occupation '" + occupation + "'");
  require(range_.contains(month), ErrorKind::kInvalidInput,
          "month " + format_month(month) + " outside the employment table range");
  return it->second[static_cast<std::size_t>(month - range_.first)];
}

double EmploymentTable::total(int month) const {
  require(range_.contains(month), ErrorKind::kInvalidInput,
          "month " + format_month(month) + " outside the employment table range");
  return totals_[static_cast<std::size_t>(month - range_.first)];
}

std::vector<MonthlyEmployment> EmploymentTable::records() const {
  std::vector<MonthlyEmployment> out;
  out.reserve(series_.size() * static_cast<std::size_t>(range_.count));
  for (const auto& [occ, values] : series_) {
    for (int k = 0; k < range_.count; ++k) {
      out.push_back({occ, range_.first + k, values[static_cast<std::size_t>(k)]});
    }
  }
  return out;
}

namespace {

std::map<std::string, std::vector<std::pair<int, double>>> anchors_by_occupation(
    std::span<const OccupationEmployment> annual, const InterpolationConfig& config) {
  require(config.anchor_month >= 1 && config.anchor_month <= 12, ErrorKind::kConfig,
          "anchor month must be in 1..12");
  std::map<std::string, std::vector<std::pair<int, double>>> anchors;
  std::set<std::pair<std::string, int>> seen;
  for (const auto& row : annual) {
    require(row.employment >= 0, ErrorKind::kInvalidInput,
            "negative employment for '" + row.occupation + "' in " + std::to_string(row.year));
    require(seen.insert({row.occupation, row.year}).second, ErrorKind::kInvalidInput,
            "duplicate employment row for '" + row.occupation + "' in " + std::to_string(row.year));
    anchors[row.occupation].emplace_back(month_index(row.year, config.anchor_month, config.epoch),
                                         static_cast<double>(row.employment));
  }
  for (auto& [occ, points] : anchors) std::sort(points.begin(), points.end());
  return anchors;
}

std::vector<double> interpolate_series(const std::vector<std::pair<int, double>>& anchors, MonthRange range) {
  std::vector<double> out(static_cast<std::size_t>(range.count));
  std::size_t seg = 0;
  for (int k = 0; k < range.count; ++k) {
    const int m = range.first + k;
    double value;
    if (m <= anchors.front().first) {
      value = anchors.front().second;
    } else if (m >= anchors.back().first) {
      value = anchors.back().second;
    } else {
      while (anchors[seg + 1].first < m) ++seg;
      const auto [a, va] = anchors[seg];
      const auto [b, vb] = anchors[seg + 1];
      value = va + (vb - va) * static_cast<double>(m - a) / static_cast<double>(b - a);
    }
    out[static_cast<std::size_t>(k)] = value;
  }
  return out;
}

}  // namespace

EmploymentTable interpolate_employment(std::span<const OccupationEmployment> annual, MonthRange range,
                                       const InterpolationConfig& config) {
  require(range.count > 0, ErrorKind::kInvalidInput, "empty month range");
  const auto anchors = anchors_by_occupation(annual, config);
  std::map<std::string, std::vector<double>> series;
  for (const auto& [occ, points] : anchors) series.emplace(occ, interpolate_series(points, range));
  return EmploymentTable(range, std::move(series));
}

EmploymentTable interpolate_employment(std::span<const OccupationEmployment> annual,
                                       std::span<const std::string> occupations, MonthRange range,
                                       const InterpolationConfig& config) {
  require(range.count > 0, ErrorKind::kInvalidInput, "empty month range");
  const auto anchors = anchors_by_occupation(annual, config);
  std::map<std::string, std::vector<double>> series;
  for (const auto& occ : occupations) {
    const auto it = anchors.find(occ);
    require(it != anchors.end(), ErrorKind::kMissingOccupation,
            "no annual employment rows for occupation '" + occ + "'");
    series.emplace(occ, interpolate_series(it->second, range));
  }
  return EmploymentTable(range, std::move(series));
}

std::string to_string(EmploymentMode mode) {
  return mode == EmploymentMode::kContemporaneous ? "contemporaneous" : "fixed2010";
}

EmploymentMode parse_employment_mode(const std::string& text) {
  if (text == "contemporaneous") return EmploymentMode::kContemporaneous;
  if (text == "fixed2010" || text == "fixed_2010") return EmploymentMode::kFixedBaseYear;
  fail(ErrorKind::kConfig, "unknown employment mode '" + text + "'");
}

// --- shares -------------------------------------------------------------------

AdIndex::AdIndex(std::span<const JobAdRecord> ads) {
  for (const auto& ad : ads) {
    auto& cell = cells_[{ad.occupation, ad.month}];
    ++cell.total;
    for (const auto& skill : ad.skills) ++cell.by_skill[skill];
  }
}

std::int64_t AdIndex::ads(const std::string& occupation, int month) const {
  const auto it = cells_.find({occupation, month});
  return it == cells_.end() ? 0 : it->second.total;
}

std::int64_t AdIndex::mentions(const std::string& skill, const std::string& occupation, int month) const {
  const auto it = cells_.find({occupation, month});
  if (it == cells_.end()) return 0;
  const auto s = it->second.by_skill.find(skill);
  return s == it->second.by_skill.end() ? 0 : s->second;
}

namespace {

double employment_ratio(const EmploymentTable& emp, const std::string& occupation, int month) {
  const double total = emp.total(month);
  require(total > 0.0, ErrorKind::kInvalidInput, "total employment is zero in " + format_month(month));
  return emp.at(occupation, month) / total;
}

double ad_ratio(std::int64_t mentions, std::int64_t ads) {
  return static_cast<double>(mentions) / static_cast<double>(ads);
}

}  // namespace

double compute_skill_share(const AdIndex& index, const EmploymentTable& emp, const std::string& skill,
                           const std::string& occupation, int month) {
  const auto all = index.ads(occupation, month);
  require(all > 0, ErrorKind::kUndefinedShare,
          "no ads for occupation '" + occupation + "' in " + format_month(month));
  return ad_ratio(index.mentions(skill, occupation, month), all) *
         employment_ratio(emp, occupation, month);
}

double compute_skill_share(std::span<const JobAdRecord> ads, const EmploymentTable& emp,
                           const std::string& skill, const std::string& occupation, int month) {
  return compute_skill_share(AdIndex(ads), emp, skill, occupation, month);
}

std::size_t SkillSharePanel::skill_index(const std::string& skill) const {
  const auto it = std::find(skills.begin(), skills.end(), skill);
  require(it != skills.end(), ErrorKind::kInvalidInput, "skill '" + skill + "' is not in the panel");
  return static_cast<std::size_t>(it - skills.begin());
}

std::vector<double> SkillSharePanel::series(const std::string& skill) const {
  return values.column(skill_index(skill));
}

SkillSharePanel SkillSharePanel::select(std::span<const std::string> subset) const {
  require(!subset.empty(), ErrorKind::kInvalidInput, "empty skill subset");
  SkillSharePanel out{{subset.begin(), subset.end()}, months, Matrix(values.rows(), subset.size()),
                      employment_mode};
  for (std::size_t c = 0; c < subset.size(); ++c) {
    const auto src = skill_index(subset[c]);
    for (std::size_t r = 0; r < values.rows(); ++r) out.values(r, c) = values(r, src);
  }
  return out;
}

SkillSharePanel SkillSharePanel::slice_months(std::size_t first, std::size_t count) const {
  require(first + count <= values.rows(), ErrorKind::kInvalidInput, "month slice out of range");
  SkillSharePanel out{skills, {months.first + static_cast<int>(first), static_cast<int>(count)},
                      Matrix(count, skills.size()), employment_mode};
  for (std::size_t r = 0; r < count; ++r) {
    std::copy(values.row(first + r).begin(), values.row(first + r).end(), out.values.row(r).begin());
  }
  return out;
}

PanelBuild build_panel(std::span<const JobAdRecord> ads, const EmploymentTable& emp,
                       std::span<const std::string> skills, std::span<const std::string> occupations,
                       MonthRange range, const PanelConfig& config) {
  require(!skills.empty(), ErrorKind::kInvalidInput, "no skills requested");
  require(!occupations.empty(), ErrorKind::kInvalidInput, "no occupations requested");
  require(range.count > 0, ErrorKind::kInvalidInput, "empty month range");

  const AdIndex index(ads);
  PanelBuild out;
  out.panel.skills.assign(skills.begin(), skills.end());
  out.panel.months = range;
  out.panel.values = Matrix(static_cast<std::size_t>(range.count), skills.size());
  out.panel.employment_mode = config.mode;

  std::vector<double> fixed_ratio(occupations.size(), 0.0);
  if (config.mode == EmploymentMode::kFixedBaseYear) {
    const int base = month_index(config.base_year, config.interpolation.anchor_month, config.interpolation.epoch);
    for (std::size_t j = 0; j < occupations.size(); ++j) {
      fixed_ratio[j] = employment_ratio(emp, occupations[j], base);
    }
  }

  for (int k = 0; k < range.count; ++k) {
    const int month = range.first + k;
    auto row = out.panel.values.row(static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < occupations.size(); ++j) {
      const auto& occ = occupations[j];
      const auto all = index.ads(occ, month);
      if (all == 0) {
        ++out.diagnostics.empty_occupation_months;
        continue;
      }
      const double ratio = config.mode == EmploymentMode::kFixedBaseYear ? fixed_ratio[j]
                                                                          : employment_ratio(emp, occ, month);
      for (std::size_t i = 0; i < skills.size(); ++i) {
        row[i] += ad_ratio(index.mentions(skills[i], occ, month), all) * ratio;
      }
    }
  }
  return out;
}

std::vector<double> aggregate_shares(const SkillSharePanel& panel, std::span<const std::string> subset) {
  require(!subset.empty(), ErrorKind::kInvalidInput, "empty skill subset");
  std::vector<double> out(panel.values.rows(), 0.0);
  for (const auto& skill : subset) {
    const auto c = panel.skill_index(skill);
    for (std::size_t r = 0; r < out.size(); ++r) out[r] += panel.values(r, c);
  }
  return out;
}

SkillSharePanel aggregate_occupation_panels(std::span<const SkillSharePanel> panels) {
  require(!panels.empty(), ErrorKind::kInvalidInput, "no panels to aggregate");
  SkillSharePanel out = panels.front();
  for (std::size_t p = 1; p < panels.size(); ++p) {
    require(panels[p].skills == out.skills && panels[p].months == out.months, ErrorKind::kShape,
            "panels differ in skills or months");
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values.data()[i] += panels[p].values.data()[i];
  }
  return out;
}

// --- files ----------------------------------------------------------------------

std::vector<JobAdRecord> read_ads_csv(const std::filesystem::path& path, MonthEpoch epoch) {
  const auto rows = csv::read_file(path);
  csv::expect_header(rows, {"ad_id", "month", "soc", "skills"}, path.string());
  std::vector<JobAdRecord> ads;
  ads.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    require(row.size() == 4, ErrorKind::kInvalidInput,
            path.string() + ": line " + std::to_string(r + 1) + " has " + std::to_string(row.size()) + " fields");
    auto skills = csv::split(row[3], ';');
    std::erase(skills, std::string{});
    ads.push_back(make_ad(row[0], parse_month(row[1], epoch), row[2], std::move(skills)));
  }
  return ads;
}

std::string ads_to_csv(std::span<const JobAdRecord> ads, MonthEpoch epoch) {
  std::string out = "ad_id,month,soc,skills\n";
  for (const auto& ad : ads) {
    std::string skills;
    for (std::size_t i = 0; i < ad.skills.size(); ++i) {
      if (i) skills.push_back(';');
      skills += ad.skills[i];
    }
    out += csv::join({ad.ad_id, format_month(ad.month, epoch), ad.occupation, skills});
    out.push_back('\n');
  }
  return out;
}

std::vector<OccupationEmployment> read_employment_csv(const std::filesystem::path& path) {
  const auto rows = csv::read_file(path);
  csv::expect_header(rows, {"soc", "year", "employment"}, path.string());
  std::vector<OccupationEmployment> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    require(row.size() == 3, ErrorKind::kInvalidInput,
            path.string() + ": line " + std::to_string(r + 1) + " has " + std::to_string(row.size()) + " fields");
    out.push_back({row[0], static_cast<int>(csv::parse_int(row[1], "employment year")),
                   csv::parse_int(row[2], "employment count")});
  }
  return out;
}

std::string employment_to_csv(std::span<const OccupationEmployment> rows) {
  std::string out = "soc,year,employment\n";
  for (const auto& row : rows) {
    out += csv::join({row.occupation, std::to_string(row.year), std::to_string(row.employment)});
    out.push_back('\n');
  }
  return out;
}

std::string panel_to_csv(const SkillSharePanel& panel, MonthEpoch epoch) {
  csv::Row header{"month"};
  header.insert(header.end(), panel.skills.begin(), panel.skills.end());
  std::string out = csv::join(header) + "\n";
  for (std::size_t r = 0; r < panel.values.rows(); ++r) {
    out += format_month(panel.months.first + static_cast<int>(r), epoch);
    for (double v : panel.values.row(r)) {
      out.push_back(',');
      out += csv::format_number(v, 10);
    }
    out.push_back('\n');
  }
  return out;
}

SkillSharePanel read_panel_csv(const std::filesystem::path& path, MonthEpoch epoch) {
  const auto rows = csv::read_file(path);
  require(rows.size() >= 2 && !rows.front().empty() && rows.front().front() == "month",
          ErrorKind::kInvalidInput, path.string() + ": expected header 'month,<skills...>'");
  SkillSharePanel panel;
  panel.skills.assign(rows.front().begin() + 1, rows.front().end());
  require(!panel.skills.empty(), ErrorKind::kInvalidInput, path.string() + ": no skill columns");
  const std::size_t n = rows.size() - 1;
  panel.values = Matrix(n, panel.skills.size());
  panel.months = {parse_month(rows[1][0], epoch), static_cast<int>(n)};
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = rows[r + 1];
    require(row.size() == panel.skills.size() + 1, ErrorKind::kInvalidInput,
            path.string() + ": ragged row " + std::to_string(r + 2));
    require(parse_month(row[0], epoch) == panel.months.first + static_cast<int>(r), ErrorKind::kInvalidInput,
            path.string() + ": months are not contiguous at row " + std::to_string(r + 2));
    for (std::size_t c = 0; c < panel.skills.size(); ++c) {
      panel.values(r, c) = csv::parse_double(row[c + 1], path.string());
    }
  }
  return panel;
}

}  // namespace skillcast::market

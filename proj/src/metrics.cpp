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

#include "skillcast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "skillcast/csv.hpp"
#include "skillcast/error.hpp"

namespace skillcast::metrics {

namespace {

void check_pair(std::span<const double> predicted, std::span<const double> actual, std::size_t min_len) {
  require(predicted.size() == actual.size(), ErrorKind::kShape,
          "predicted has " + std::to_string(predicted.size()) + " values, actual has " +
              std::to_string(actual.size()));
  require(actual.size() >= min_len, ErrorKind::kInvalidInput,
          "metric needs at least " + std::to_string(min_len) + " values");
}

}  // namespace

MetricResult nrmse(std::span<const double> predicted, std::span<const double> actual, const std::string& space) {
  check_pair(predicted, actual, 2);
  const auto [lo, hi] = std::minmax_element(actual.begin(), actual.end());
  const double range = *hi - *lo;
  require(range > 0.0, ErrorKind::kUndefinedNormalization, "actual series is constant; NRMSE range is zero");
  double ss = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double d = predicted[i] - actual[i];
    ss += d * d;
  }
  const double value = std::sqrt(ss / static_cast<double>(actual.size())) / range;
  require(std::isfinite(value), ErrorKind::kNumeric, "NRMSE is not finite");
  return {"nrmse", value, "range", space};
}

MetricResult mape(std::span<const double> predicted, std::span<const double> actual, const std::string& space) {
  check_pair(predicted, actual, 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    require(actual[i] != 0.0, ErrorKind::kUndefinedMape, "actual value at index " + std::to_string(i) + " is zero");
    sum += std::abs(predicted[i] - actual[i]) / std::abs(actual[i]);
  }
  const double value = 100.0 * sum / static_cast<double>(actual.size());
  require(std::isfinite(value), ErrorKind::kNumeric, "MAPE is not finite");
  return {"mape", value, "actual", space};
}

double pearson(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorKind::kShape, "correlation needs series of equal length");
  require(a.size() >= 2, ErrorKind::kInvalidInput, "correlation needs at least two points");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  require(saa > 0.0 && sbb > 0.0, ErrorKind::kUndefinedCorrelation, "series is constant");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

CorrelationSummary correlation_summary(const Matrix& series, std::span<const std::string> names) {
  const std::size_t n = series.cols();
  require(n >= 2, ErrorKind::kInvalidInput, "correlation summary needs at least two series");
  require(names.size() == n, ErrorKind::kShape, "one name per series required");
  std::vector<std::vector<double>> cols;
  for (std::size_t s = 0; s < n; ++s) {
    cols.push_back(series.column(s));
    const auto [lo, hi] = std::minmax_element(cols.back().begin(), cols.back().end());
    require(*hi > *lo, ErrorKind::kUndefinedCorrelation, "series '" + names[s] + "' is constant");
  }
  CorrelationSummary out;
  out.names.assign(names.begin(), names.end());
  out.matrix = Matrix(n, n);
  out.minimum = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.matrix(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = pearson(cols[i], cols[j]);
      out.matrix(i, j) = r;
      out.matrix(j, i) = r;
      out.minimum = std::min(out.minimum, r);
    }
  }
  return out;
}

CorrelationSummary correlation_summary(const market::SkillSharePanel& panel) {
  return correlation_summary(panel.values, panel.skills);
}

CorrelationReport correlation_vs_error_report(std::span<const CorrelationPoint> points) {
  require(points.size() >= 3, ErrorKind::kInsufficientData,
          "correlation report needs at least 3 datasets, got " + std::to_string(points.size()));
  std::vector<CorrelationPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return std::tie(a.min_correlation, a.nrmse, a.dataset) < std::tie(b.min_correlation, b.nrmse, b.dataset);
  });
  const double n = static_cast<double>(sorted.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : sorted) {
    mx += p.min_correlation;
    my += p.nrmse;
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& p : sorted) {
    sxy += (p.min_correlation - mx) * (p.nrmse - my);
    sxx += (p.min_correlation - mx) * (p.min_correlation - mx);
  }
  require(sxx > 0.0, ErrorKind::kUndefinedCorrelation, "all datasets share the same minimum correlation");
  CorrelationReport out;
  out.points.assign(points.begin(), points.end());
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  return out;
}

std::string correlation_report_to_csv(const CorrelationReport& report) {
  std::ostringstream os;
  os << "dataset,min_correlation,nrmse\n";
  for (const auto& p : report.points) {
    os << csv::escape(p.dataset) << ',' << csv::format_number(p.min_correlation) << ','
       << csv::format_number(p.nrmse) << '\n';
  }
  return os.str();
}

std::string correlation_fit_to_csv(const CorrelationReport& report) {
  return "slope,intercept,points\n" + csv::format_number(report.slope) + ',' +
         csv::format_number(report.intercept) + ',' + std::to_string(report.points.size()) + '\n';
}

std::string metrics_to_csv(std::span<const MetricRow> rows) {
  std::ostringstream os;
  os << "dataset,skill,metric,value,normalizer,space\n";
  for (const auto& r : rows) {
    os << csv::escape(r.dataset) << ',' << csv::escape(r.skill) << ',' << r.result.metric << ','
       << csv::format_number(r.result.value) << ',' << r.result.normalizer << ',' << r.result.space << '\n';
  }
  return os.str();
}

}  // namespace skillcast::metrics

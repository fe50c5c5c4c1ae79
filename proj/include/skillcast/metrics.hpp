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

// Forecast error metrics and the cross-skill correlation analysis.
//
// NRMSE is the RMSE divided by the range (max - min) of the actual values over
// the evaluation window. Every result records its normalizer and the space it
// was computed in so other normalizers can be added without ambiguity.

#include <span>
#include <string>
#include <vector>

#include "skillcast/market_data.hpp"
#include "skillcast/matrix.hpp"

namespace skillcast::metrics {

inline constexpr const char* kLevelSpace = "level";
inline constexpr const char* kTransformedSpace = "transformed";

struct MetricResult {
  std::string metric;      // "nrmse" or "mape"
  double value = 0.0;      // >= 0 and finite
  std::string normalizer;  // "range" for nrmse, "actual" for mape
  std::string space = kLevelSpace;
};

// kShape on unequal lengths, kInvalidInput for fewer than two points,
// kUndefinedNormalization when the actual series is constant.
MetricResult nrmse(std::span<const double> predicted, std::span<const double> actual,
                   const std::string& space = kLevelSpace);

// Mean absolute percentage error in percent. kUndefinedMape naming the first
// index whose actual value is zero.
MetricResult mape(std::span<const double> predicted, std::span<const double> actual,
                  const std::string& space = kLevelSpace);

// Pearson correlation. kUndefinedCorrelation when either series is constant.
double pearson(std::span<const double> a, std::span<const double> b);

struct CorrelationSummary {
  std::vector<std::string> names;
  Matrix matrix;         // symmetric, unit diagonal
  double minimum = 1.0;  // smallest off-diagonal entry
};

// `series` is time x n. kInvalidInput for fewer than two series;
// kUndefinedCorrelation naming the constant series.
CorrelationSummary correlation_summary(const Matrix& series, std::span<const std::string> names);
CorrelationSummary correlation_summary(const market::SkillSharePanel& panel);

struct CorrelationPoint {
  std::string dataset;
  double min_correlation = 0.0;
  double nrmse = 0.0;
};

struct CorrelationReport {
  std::vector<CorrelationPoint> points;  // input order
  // Least-squares fit nrmse = intercept + slope * min_correlation.
  double slope = 0.0;
  double intercept = 0.0;
};

// kInsufficientData for fewer than three points; kUndefinedCorrelation when
// every point has the same minimum correlation. The fit does not depend on
// the order of the points.
CorrelationReport correlation_vs_error_report(std::span<const CorrelationPoint> points);

// dataset,min_correlation,nrmse
std::string correlation_report_to_csv(const CorrelationReport& report);
// slope,intercept,points
std::string correlation_fit_to_csv(const CorrelationReport& report);

struct MetricRow {
  std::string dataset;
  std::string skill;
  MetricResult result;
};

// dataset,skill,metric,value,normalizer,space
std::string metrics_to_csv(std::span<const MetricRow> rows);

}  // namespace skillcast::metrics

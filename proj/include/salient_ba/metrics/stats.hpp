/******************************************************************************
 * Copyright 2026 Salient BA Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "salient_ba/error.hpp"

namespace sba {

/// Summary statistics over per-pose errors. std uses the sample (n-1)
/// denominator, so rmse^2 = mean^2 + std^2 * (n-1)/n.
struct ErrorStats {
  double rmse = 0.0;
  double mean = 0.0;
  double std = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  static ErrorStats from_errors(const std::vector<double>& errors) {
    if (errors.empty()) {
      throw InsufficientDataError("error stats: no samples");
    }
    ErrorStats s;
    s.count = errors.size();
    double sum = 0.0, sum_sq = 0.0;
    for (double e : errors) {
      sum += e;
      sum_sq += e * e;
    }
    const double n = static_cast<double>(errors.size());
    s.mean = sum / n;
    s.rmse = std::sqrt(sum_sq / n);
    if (errors.size() > 1) {
      double acc = 0.0;
      for (double e : errors) acc += (e - s.mean) * (e - s.mean);
      s.std = std::sqrt(acc / (n - 1.0));
    }
    std::vector<double> sorted = errors;
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    s.median = lower_median(sorted);
    return s;
  }

  /// Lower median of a sorted vector: element (n-1)/2. Deterministic for
  /// even counts; no averaging of two runs.
  static double lower_median(const std::vector<double>& sorted) {
    return sorted[(sorted.size() - 1) / 2];
  }
};

/// Per-statistic lower median across runs; per-run values are kept by the
/// caller for heatmap export.
inline ErrorStats aggregate_runs(const std::vector<ErrorStats>& runs) {
  if (runs.empty()) {
    throw InsufficientDataError("aggregate_runs: no runs");
  }
  const auto median_of = [&](double ErrorStats::*field) {
    std::vector<double> values;
    values.reserve(runs.size());
    for (const auto& r : runs) values.push_back(r.*field);
    std::sort(values.begin(), values.end());
    return ErrorStats::lower_median(values);
  };
  ErrorStats out;
  out.rmse = median_of(&ErrorStats::rmse);
  out.mean = median_of(&ErrorStats::mean);
  out.std = median_of(&ErrorStats::std);
  out.median = median_of(&ErrorStats::median);
  out.min = median_of(&ErrorStats::min);
  out.max = median_of(&ErrorStats::max);
  out.count = runs.size();
  return out;
}

}  // namespace sba

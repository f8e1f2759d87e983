// Copyright 2026 The zsg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zsg/aggregate.hpp"

#include <algorithm>
#include <cmath>

#include "zsg/error.hpp"

namespace zsg {

std::string to_string(Aggregation mode) {
  switch (mode) {
    case Aggregation::kMean: return "mean";
    case Aggregation::kMedian: return "median";
    case Aggregation::kBoth: return "both";
  }
  return "both";
}

Aggregation aggregation_from_string(const std::string& name) {
  if (name == "mean") return Aggregation::kMean;
  if (name == "median") return Aggregation::kMedian;
  if (name == "both") return Aggregation::kBoth;
  throw Error(ErrorCode::kParseError, "unknown aggregation '" + name + "'");
}

namespace {

double median_of(std::vector<double>& v) {
  const std::size_t n = v.size();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace

std::vector<AggregateSeries> aggregate(std::span<const TrajectoryRecord> runs,
                                       Aggregation mode) {
  if (runs.empty()) {
    throw Error(ErrorCode::kGridMismatch, "nothing to aggregate");
  }
  const auto& first = runs.front().series;
  for (const auto& run : runs) {
    if (run.series.size() != first.size()) {
      throw Error(ErrorCode::kGridMismatch, "records have different metrics");
    }
    for (std::size_t m = 0; m < first.size(); ++m) {
      if (run.series[m].name != first[m].name ||
          run.series[m].index != first[m].index) {
        throw Error(ErrorCode::kGridMismatch,
                    "metric '" + first[m].name + "' has different grids");
      }
    }
  }
  const bool want_median = mode != Aggregation::kMean;
  std::vector<AggregateSeries> out;
  std::vector<double> column(runs.size());
  for (std::size_t m = 0; m < first.size(); ++m) {
    AggregateSeries agg;
    agg.name = first[m].name;
    agg.index = first[m].index;
    agg.n = runs.size();
    const std::size_t len = agg.index.size();
    agg.mean.resize(len);
    agg.std.resize(len);
    agg.min.resize(len);
    agg.max.resize(len);
    if (want_median) agg.median.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
      // Welford update for mean and variance.
      double mean = 0.0, m2 = 0.0;
      double lo = runs.front().series[m].values[i], hi = lo;
      for (std::size_t r = 0; r < runs.size(); ++r) {
        const double x = runs[r].series[m].values[i];
        column[r] = x;
        const double delta = x - mean;
        mean += delta / static_cast<double>(r + 1);
        m2 += delta * (x - mean);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
      agg.mean[i] = mean;
      agg.std[i] = std::sqrt(std::max(m2, 0.0) / static_cast<double>(runs.size()));
      agg.min[i] = lo;
      agg.max[i] = hi;
      if (want_median) agg.median[i] = median_of(column);
    }
    out.push_back(std::move(agg));
  }
  return out;
}

const AggregateSeries& find_series(const std::vector<AggregateSeries>& all,
                                   const std::string& name) {
  for (const auto& s : all) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::kInvalidConfig, "no aggregate named '" + name + "'");
}

double rate_fit(std::span<const double> x, std::span<const double> y,
                double x_min) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "x and y differ in length");
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < x_min) continue;
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw Error(ErrorCode::kNonPositiveValues,
                  "log-log fit needs positive values");
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  if (lx.size() < 2) {
    throw Error(ErrorCode::kInvalidConfig, "rate fit needs two points");
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) {
    throw Error(ErrorCode::kInvalidConfig, "rate fit needs distinct x values");
  }
  return sxy / sxx;
}

double rate_fit(const AggregateSeries& series, double k_min) {
  std::vector<double> k;
  k.reserve(series.index.size());
  for (const auto& at : series.index) k.push_back(static_cast<double>(at.k));
  return rate_fit(k, series.mean, k_min);
}

}  // namespace zsg

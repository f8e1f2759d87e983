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

#ifndef ZSG_AGGREGATE_HPP_
#define ZSG_AGGREGATE_HPP_

#include <span>
#include <string>
#include <vector>

#include "zsg/trajectory.hpp"

namespace zsg {

enum class Aggregation { kMean, kMedian, kBoth };

std::string to_string(Aggregation mode);
Aggregation aggregation_from_string(const std::string& name);

// Per-index statistics of one metric over trajectories. std is the
// population standard deviation.
struct AggregateSeries {
  std::string name;
  std::vector<SeriesIndex> index;
  std::vector<double> mean;
  std::vector<double> std;
  std::vector<double> median;
  std::vector<double> min;
  std::vector<double> max;
  std::size_t n = 0;
};

// One AggregateSeries per metric, in the order of the first record. Throws
// kGridMismatch unless every record has the same metrics on the same grid.
std::vector<AggregateSeries> aggregate(std::span<const TrajectoryRecord> runs,
                                       Aggregation mode = Aggregation::kBoth);

const AggregateSeries& find_series(const std::vector<AggregateSeries>& all,
                                   const std::string& name);

// Least-squares slope of log(y) against log(x) over the points with
// x >= x_min. Throws kNonPositiveValues when a used y (or x) is not positive.
double rate_fit(std::span<const double> x, std::span<const double> y,
                double x_min);
// Fits the mean of `series` against its inner index k.
double rate_fit(const AggregateSeries& series, double k_min);

}  // namespace zsg

#endif  // ZSG_AGGREGATE_HPP_

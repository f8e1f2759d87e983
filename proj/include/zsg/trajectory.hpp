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

#ifndef ZSG_TRAJECTORY_HPP_
#define ZSG_TRAJECTORY_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "zsg/game.hpp"

namespace zsg {

// (outer t, inner k). Matrix-game runs use t = 0 throughout.
struct SeriesIndex {
  std::int64_t t = 0;
  std::int64_t k = 0;
  auto operator<=>(const SeriesIndex&) const = default;
};

struct MetricSeries {
  std::string name;
  std::vector<SeriesIndex> index;
  std::vector<double> values;

  void push(SeriesIndex at, double value) {
    index.push_back(at);
    values.push_back(value);
  }
  bool operator==(const MetricSeries&) const = default;
};

struct TrajectoryRecord {
  nlohmann::json config_echo;
  std::vector<std::string> warnings;
  std::vector<MetricSeries> series;
  JointPolicy final_policy;
  PolicyTable final_q[2];
  Vector final_v[2];  // empty for matrix-game runs
  std::int64_t transitions = 0;

  // Throws kInvalidConfig for an unknown name.
  const MetricSeries& metric(const std::string& name) const;
  MetricSeries& metric_or_add(const std::string& name);
  bool has_metric(const std::string& name) const;

  bool operator==(const TrajectoryRecord& other) const;
};

}  // namespace zsg

#endif  // ZSG_TRAJECTORY_HPP_

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

#include "zsg/trajectory.hpp"

#include "zsg/error.hpp"

namespace zsg {

const MetricSeries& TrajectoryRecord::metric(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::kInvalidConfig, "no metric named '" + name + "'");
}

MetricSeries& TrajectoryRecord::metric_or_add(const std::string& name) {
  for (auto& s : series) {
    if (s.name == name) return s;
  }
  series.push_back(MetricSeries{name, {}, {}});
  return series.back();
}

bool TrajectoryRecord::has_metric(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) return true;
  }
  return false;
}

bool TrajectoryRecord::operator==(const TrajectoryRecord& o) const {
  for (int p = 0; p < 2; ++p) {
    if (!same_table(final_q[p], o.final_q[p])) return false;
    if (final_v[p].size() != o.final_v[p].size() || final_v[p] != o.final_v[p]) {
      return false;
    }
  }
  return config_echo == o.config_echo && warnings == o.warnings &&
         series == o.series && final_policy == o.final_policy &&
         transitions == o.transitions;
}

}  // namespace zsg

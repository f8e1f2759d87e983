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

// CSV emission for aggregated series. Numbers are written in the shortest
// decimal form that parses back to the same double.

#ifndef ZSG_CSV_HPP_
#define ZSG_CSV_HPP_

#include <string>
#include <vector>

#include "zsg/aggregate.hpp"

namespace zsg {

std::string format_double(double value);

enum class CsvSchema { kMatrix, kStochastic };

// Matrix columns:     k,ng_mean,ng_std,ngtau_mean,ngtau_std,min_pi,q_inf
// Stochastic columns: t,k,ng_mean,ng_std,lsum,min_pi,q_inf,v_inf[,v_err]
// min_pi is the minimum and q_inf / v_inf the maximum over trajectories;
// lsum and v_err are means. Median columns (ng_median, and ngtau_median for
// matrix runs) follow when the aggregation includes medians, then br_gap_mean
// for runs against a frozen opponent.
std::string render_csv(CsvSchema schema,
                       const std::vector<AggregateSeries>& series,
                       Aggregation mode);

// Writes `contents` to a sibling temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace zsg

#endif  // ZSG_CSV_HPP_

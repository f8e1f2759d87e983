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

// Seeded multi-trajectory experiments: sweep expansion, trajectory dispatch,
// aggregation and output bundles (one CSV per sweep point plus a manifest).
//
// Seeds. Trajectory j of a sweep point gets
//   derive_seed(base_seed, point_key, j)
// where point_key is the FNV-1a hash of the point's canonical JSON overrides
// (0 when there is no sweep). A point's seeds therefore depend only on its
// own parameter values, never on where it sits in the sweep grid or on the
// order in which trajectories are executed.

#ifndef ZSG_EXPERIMENT_HPP_
#define ZSG_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "zsg/aggregate.hpp"
#include "zsg/config.hpp"
#include "zsg/game_io.hpp"
#include "zsg/trajectory.hpp"

namespace zsg {

const char* tool_version();

using RunConfig = std::variant<MatrixRunConfig, VisbrConfig>;

// Lists of values; an empty list leaves the base value alone. The sweep is
// the cross product in the order tau, eps_bar, stepsize, iterations (K),
// outer_iterations (T).
struct SweepAxes {
  std::vector<double> tau;
  std::vector<double> eps_bar;
  std::vector<StepSchedule> stepsize;
  std::vector<std::int64_t> iterations;
  std::vector<std::int64_t> outer_iterations;

  std::size_t size() const;
  bool operator==(const SweepAxes&) const = default;
};

struct ExperimentConfig {
  nlohmann::json game;  // source string ("builtin:..." or path) or inline doc
  RunConfig run;
  std::int64_t n_trajectories = 1;
  SweepAxes sweep;
  std::string output_dir;
  Aggregation aggregation = Aggregation::kBoth;
  std::int64_t max_runs = 10000;

  bool operator==(const ExperimentConfig&) const = default;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

AnyGame resolve_game(const ExperimentConfig& config);

struct SweepPoint {
  std::size_t index = 0;
  nlohmann::json overrides = nlohmann::json::object();
  std::uint64_t key = 0;
  RunConfig run;
};

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& config);

std::uint64_t trajectory_seed(std::uint64_t base_seed, std::uint64_t point_key,
                              std::int64_t trajectory);

enum class Execution { kSerial, kParallel };

// Runs `n` trajectories of `run` (seeded per trajectory_seed). The serial
// path is the reference; the OpenMP path must return identical records.
std::vector<TrajectoryRecord> run_trajectories(const AnyGame& game,
                                               const RunConfig& run,
                                               std::uint64_t point_key,
                                               std::int64_t n,
                                               Execution execution);

struct RunOptions {
  bool force = false;
  bool write_outputs = true;
  Execution execution = Execution::kParallel;
};

struct PointResult {
  SweepPoint point;
  std::vector<AggregateSeries> series;
  std::string csv;
  std::string csv_name;
};

struct ExperimentResult {
  std::vector<PointResult> points;
  nlohmann::json manifest;
  std::vector<std::string> warnings;
};

// Throws kOutputExists when output_dir is a non-empty directory and
// options.force is false.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const RunOptions& options = {});

}  // namespace zsg

#endif  // ZSG_EXPERIMENT_HPP_

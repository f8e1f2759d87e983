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

#include "zsg/experiment.hpp"

#include <exception>
#include <filesystem>
#include <set>
#include <sstream>

#include "zsg/csv.hpp"
#include "zsg/dynamics_matrix.hpp"
#include "zsg/dynamics_stochastic.hpp"
#include "zsg/error.hpp"
#include "zsg/rng.hpp"

#ifndef ZSG_VERSION
#define ZSG_VERSION "unknown"
#endif

namespace zsg {

using nlohmann::json;

const char* tool_version() { return ZSG_VERSION; }

std::size_t SweepAxes::size() const {
  auto factor = [](std::size_t n) { return n == 0 ? std::size_t{1} : n; };
  return factor(tau.size()) * factor(eps_bar.size()) *
         factor(stepsize.size()) * factor(iterations.size()) *
         factor(outer_iterations.size());
}

void to_json(json& j, const ExperimentConfig& c) {
  j = json::object();
  j["game"] = c.game;
  if (const auto* m = std::get_if<MatrixRunConfig>(&c.run)) {
    j["dynamics"] = "matrix";
    j["run"] = *m;
  } else {
    j["dynamics"] = "visbr";
    j["run"] = std::get<VisbrConfig>(c.run);
  }
  j["n_trajectories"] = c.n_trajectories;
  json sweep = json::object();
  if (!c.sweep.tau.empty()) sweep["tau"] = c.sweep.tau;
  if (!c.sweep.eps_bar.empty()) sweep["eps_bar"] = c.sweep.eps_bar;
  if (!c.sweep.stepsize.empty()) sweep["stepsize"] = c.sweep.stepsize;
  if (!c.sweep.iterations.empty()) sweep["iterations"] = c.sweep.iterations;
  if (!c.sweep.outer_iterations.empty()) {
    sweep["outer_iterations"] = c.sweep.outer_iterations;
  }
  j["sweep"] = std::move(sweep);
  j["output_dir"] = c.output_dir;
  j["aggregation"] = to_string(c.aggregation);
  j["max_runs"] = c.max_runs;
}

void from_json(const json& j, ExperimentConfig& c) {
  try {
    c = ExperimentConfig{};
    if (!j.contains("game")) {
      throw Error(ErrorCode::kParseError, "experiment config needs 'game'");
    }
    c.game = j.at("game");
    const std::string dynamics = j.value("dynamics", "matrix");
    const json run = j.value("run", json::object());
    if (dynamics == "matrix") {
      c.run = run.get<MatrixRunConfig>();
    } else if (dynamics == "visbr") {
      c.run = run.get<VisbrConfig>();
    } else {
      throw Error(ErrorCode::kParseError,
                  "unknown dynamics '" + dynamics + "'");
    }
    c.n_trajectories = j.value("n_trajectories", c.n_trajectories);
    if (j.contains("sweep")) {
      const json& s = j.at("sweep");
      c.sweep.tau = s.value("tau", std::vector<double>{});
      c.sweep.eps_bar = s.value("eps_bar", std::vector<double>{});
      if (s.contains("stepsize")) {
        c.sweep.stepsize = s.at("stepsize").get<std::vector<StepSchedule>>();
      }
      c.sweep.iterations =
          s.value("iterations", std::vector<std::int64_t>{});
      c.sweep.outer_iterations =
          s.value("outer_iterations", std::vector<std::int64_t>{});
    }
    c.output_dir = j.value("output_dir", std::string{});
    c.aggregation = aggregation_from_string(j.value("aggregation", "both"));
    c.max_runs = j.value("max_runs", c.max_runs);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

AnyGame resolve_game(const ExperimentConfig& config) {
  if (config.game.is_string()) return load_game(config.game.get<std::string>());
  if (config.game.is_object()) return game_from_json(config.game);
  throw Error(ErrorCode::kParseError,
              "'game' must be a source string or a game object");
}

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <typename Config>
void apply_override(Config& c, const std::string& axis, const json& value) {
  if (axis == "tau") {
    c.tau = value.get<double>();
  } else if (axis == "eps_bar") {
    c.eps_bar = value.get<double>();
  } else if (axis == "stepsize") {
    c.schedule = value.get<StepSchedule>();
  } else if (axis == "iterations") {
    if constexpr (std::is_same_v<Config, MatrixRunConfig>) {
      c.iterations = value.get<std::int64_t>();
    } else {
      c.inner_iterations = value.get<std::int64_t>();
    }
  } else if (axis == "outer_iterations") {
    if constexpr (std::is_same_v<Config, VisbrConfig>) {
      c.outer_iterations = value.get<std::int64_t>();
    } else {
      throw Error(ErrorCode::kInvalidConfig,
                  "outer_iterations only applies to visbr runs");
    }
  }
}

}  // namespace

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& config) {
  if (config.n_trajectories < 1) {
    throw Error(ErrorCode::kInvalidConfig, "n_trajectories must be >= 1");
  }
  const std::size_t n_points = config.sweep.size();
  const auto total = static_cast<double>(n_points) *
                     static_cast<double>(config.n_trajectories);
  if (total > static_cast<double>(config.max_runs)) {
    std::ostringstream os;
    os << "sweep needs " << total << " runs, cap is " << config.max_runs;
    throw Error(ErrorCode::kInvalidConfig, os.str());
  }
  std::vector<std::pair<std::string, std::vector<json>>> axes;
  auto add_axis = [&](const char* name, const auto& values) {
    if (values.empty()) return;
    std::vector<json> js;
    for (const auto& v : values) js.emplace_back(v);
    axes.emplace_back(name, std::move(js));
  };
  add_axis("tau", config.sweep.tau);
  add_axis("eps_bar", config.sweep.eps_bar);
  add_axis("stepsize", config.sweep.stepsize);
  add_axis("iterations", config.sweep.iterations);
  add_axis("outer_iterations", config.sweep.outer_iterations);

  std::vector<SweepPoint> points;
  points.reserve(n_points);
  std::vector<std::size_t> digit(axes.size(), 0);
  for (std::size_t p = 0; p < n_points; ++p) {
    SweepPoint point;
    point.index = p;
    point.run = config.run;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const json& value = axes[a].second[digit[a]];
      point.overrides[axes[a].first] = value;
      std::visit([&](auto& c) { apply_override(c, axes[a].first, value); },
                 point.run);
    }
    point.key = axes.empty() ? 0 : fnv1a(point.overrides.dump());
    std::visit([](const auto& c) { validate(c); }, point.run);
    points.push_back(std::move(point));
    // Odometer over the axes, last axis fastest.
    for (std::size_t a = axes.size(); a-- > 0;) {
      if (++digit[a] < axes[a].second.size()) break;
      digit[a] = 0;
    }
  }
  return points;
}

std::uint64_t trajectory_seed(std::uint64_t base_seed, std::uint64_t point_key,
                              std::int64_t trajectory) {
  return derive_seed(base_seed, point_key,
                     static_cast<std::uint64_t>(trajectory));
}

namespace {

TrajectoryRecord run_one(const AnyGame& game, const RunConfig& run,
                         std::uint64_t point_key, std::int64_t j) {
  if (const auto* m = std::get_if<MatrixRunConfig>(&run)) {
    const auto* g = std::get_if<MatrixGame>(&game);
    if (!g) {
      throw Error(ErrorCode::kInvalidConfig,
                  "matrix dynamics need a matrix game");
    }
    MatrixRunConfig c = *m;
    c.seed = trajectory_seed(m->seed, point_key, j);
    return run_matrix_dynamics(*g, c);
  }
  const auto& v = std::get<VisbrConfig>(run);
  const auto* g = std::get_if<StochasticGame>(&game);
  if (!g) {
    throw Error(ErrorCode::kInvalidConfig,
                "visbr dynamics need a stochastic game");
  }
  VisbrConfig c = v;
  c.seed = trajectory_seed(v.seed, point_key, j);
  return run_visbr(*g, c);
}

}  // namespace

std::vector<TrajectoryRecord> run_trajectories(const AnyGame& game,
                                               const RunConfig& run,
                                               std::uint64_t point_key,
                                               std::int64_t n,
                                               Execution execution) {
  std::vector<TrajectoryRecord> records(static_cast<std::size_t>(n));
  if (execution == Execution::kSerial) {
    for (std::int64_t j = 0; j < n; ++j) {
      records[j] = run_one(game, run, point_key, j);
    }
    return records;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t j = 0; j < n; ++j) {
    try {
      records[j] = run_one(game, run, point_key, j);
    } catch (...) {
#pragma omp critical(zsg_run_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

namespace {

void prepare_output_dir(const std::string& dir, bool force) {
  namespace fs = std::filesystem;
  if (dir.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "output directory is not set");
  }
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) {
      throw Error(ErrorCode::kOutputExists, dir + " is not a directory");
    }
    if (!fs::is_empty(dir) && !force) {
      throw Error(ErrorCode::kOutputExists,
                  dir + " is not empty (use --force to overwrite)");
    }
  } else {
    fs::create_directories(dir);
  }
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const RunOptions& options) {
  const AnyGame game = resolve_game(config);
  const auto points = expand_sweep(config);
  if (options.write_outputs) prepare_output_dir(config.output_dir, options.force);

  const CsvSchema schema = std::holds_alternative<MatrixRunConfig>(config.run)
                               ? CsvSchema::kMatrix
                               : CsvSchema::kStochastic;
  ExperimentResult result;
  std::set<std::string> seen;
  json manifest_points = json::array();
  for (const auto& point : points) {
    const auto records = run_trajectories(game, point.run, point.key,
                                          config.n_trajectories,
                                          options.execution);
    // Warnings depend on the configuration, not on the seed.
    for (const auto& w : records.front().warnings) {
      std::string line = w;
      if (!point.overrides.empty()) {
        line = "point " + std::to_string(point.index) + ": " + w;
      }
      if (seen.insert(line).second) result.warnings.push_back(line);
    }
    PointResult pr;
    pr.point = point;
    pr.series = aggregate(records, config.aggregation);
    pr.csv = render_csv(schema, pr.series, config.aggregation);
    std::ostringstream name;
    name << "point_";
    name.width(4);
    name.fill('0');
    name << point.index << ".csv";
    pr.csv_name = name.str();
    manifest_points.push_back(json{{"index", point.index},
                                   {"overrides", point.overrides},
                                   {"seed_key", hex64(point.key)},
                                   {"csv", pr.csv_name}});
    result.points.push_back(std::move(pr));
  }

  result.manifest = json{{"config", config},
                         {"warnings", result.warnings},
                         {"tool_version", tool_version()},
                         {"game_hash", hex64(game_hash(game))},
                         {"points", std::move(manifest_points)}};
  if (options.write_outputs) {
    namespace fs = std::filesystem;
    for (const auto& pr : result.points) {
      write_file_atomic((fs::path(config.output_dir) / pr.csv_name).string(),
                        pr.csv);
    }
    write_file_atomic((fs::path(config.output_dir) / "manifest.json").string(),
                      result.manifest.dump(2) + "\n");
  }
  return result;
}

}  // namespace zsg

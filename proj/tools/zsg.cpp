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

// zsg command-line tool: learning-dynamics runs, sweeps and exact oracles.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "zsg/error.hpp"
#include "zsg/experiment.hpp"
#include "zsg/game_io.hpp"
#include "zsg/metrics.hpp"
#include "zsg/operators.hpp"

namespace {

using nlohmann::json;

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> stride;
  bool force = false;
  bool quiet = false;
};

json vector_json(const zsg::Vector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

// A run config file is either a full experiment document (it has a "run"
// key) or a bare run config with optional n_trajectories / aggregation.
zsg::ExperimentConfig experiment_from_run_file(const std::string& game,
                                               const std::string& config_path,
                                               const char* dynamics) {
  json doc = config_path.empty() ? json::object()
                                 : zsg::read_json_file(config_path);
  json exp;
  if (doc.contains("run")) {
    exp = std::move(doc);
  } else {
    exp["run"] = doc;
    if (doc.contains("n_trajectories")) {
      exp["n_trajectories"] = doc["n_trajectories"];
    }
    if (doc.contains("aggregation")) exp["aggregation"] = doc["aggregation"];
  }
  exp["game"] = game;
  exp["dynamics"] = dynamics;
  return exp.get<zsg::ExperimentConfig>();
}

void apply_globals(zsg::ExperimentConfig& config, const GlobalFlags& flags) {
  std::visit(
      [&](auto& run) {
        if (flags.seed) run.seed = *flags.seed;
        if (flags.stride) run.record_stride = *flags.stride;
      },
      config.run);
}

int run_and_report(zsg::ExperimentConfig config, const std::string& out,
                   const GlobalFlags& flags) {
  if (!out.empty()) config.output_dir = out;
  apply_globals(config, flags);
  zsg::RunOptions options;
  options.force = flags.force;
  const auto result = zsg::run_experiment(config, options);
  if (!flags.quiet) {
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& p : result.points) {
      std::cout << config.output_dir << "/" << p.csv_name << "\n";
    }
    std::cout << config.output_dir << "/manifest.json\n";
  }
  return 0;
}

const zsg::MatrixGame& require_matrix(const zsg::AnyGame& game,
                                      const char* what) {
  const auto* m = std::get_if<zsg::MatrixGame>(&game);
  if (!m) {
    throw zsg::Error(zsg::ErrorCode::kInvalidConfig,
                     std::string(what) + " needs a matrix game");
  }
  return *m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Independent learning dynamics for two-player zero-sum games"};
  app.set_version_flag("--version", std::string(zsg::tool_version()));
  app.require_subcommand(1);

  GlobalFlags flags;
  std::uint64_t seed = 0;
  std::int64_t stride = 0;
  auto* seed_opt = app.add_option("--seed", seed, "base seed override");
  auto* stride_opt =
      app.add_option("--stride", stride, "record every n-th iteration")
          ->check(CLI::PositiveNumber);
  app.add_flag("--force", flags.force, "overwrite a non-empty output dir");
  app.add_flag("--quiet", flags.quiet, "suppress warnings and listing");

  std::string game_src, config_path, out_dir, policy_path;
  double tau = 0.1;
  double gap_tol = 1e-10;

  auto* matrix_run = app.add_subcommand("matrix-run", "smoothed best-response "
                                                      "dynamics on a matrix game");
  matrix_run->fallthrough();
  matrix_run->add_option("--game", game_src,
                         "file, builtin:mp, builtin:rps or builtin:appF:N=<int>")
      ->required();
  matrix_run->add_option("--config", config_path, "run config (JSON)");
  matrix_run->add_option("--out", out_dir, "output directory")->required();

  auto* sg_run = app.add_subcommand("sg-run", "VI-SBR on a stochastic game");
  sg_run->fallthrough();
  sg_run->add_option("--game", game_src, "stochastic game file")->required();
  sg_run->add_option("--config", config_path, "run config (JSON)");
  sg_run->add_option("--out", out_dir, "output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "experiment with sweep axes");
  sweep->fallthrough();
  sweep->add_option("--config", config_path, "experiment config (JSON)")
      ->required();
  sweep->add_option("--out", out_dir, "output directory");

  auto* oracle = app.add_subcommand("oracle", "exact solvers and gaps");
  oracle->require_subcommand(1);
  auto* o_value = oracle->add_subcommand("value", "matrix-game value");
  o_value->add_option("--game", game_src)->required();
  o_value->add_option("--tol", gap_tol, "fixed-point residual (stochastic games)");
  auto* o_ng = oracle->add_subcommand("ng", "Nash gap of a joint policy");
  auto* o_ngtau =
      oracle->add_subcommand("ngtau", "regularized Nash gap of a joint policy");
  auto* o_nashdist =
      oracle->add_subcommand("nashdist", "Nash distribution at temperature tau");
  for (auto* sub : {o_ng, o_ngtau, o_nashdist}) {
    sub->add_option("--game", game_src)->required();
    sub->add_option("--tau", tau)->check(CLI::PositiveNumber);
  }
  o_ng->add_option("--policy", policy_path)->required();
  o_ngtau->add_option("--policy", policy_path)->required();
  o_nashdist->add_option("--policy", policy_path, "ignored");
  o_ng->add_option("--tol", gap_tol, "solver tolerance (stochastic games)");

  CLI11_PARSE(app, argc, argv);
  if (*seed_opt) flags.seed = seed;
  if (*stride_opt) flags.stride = stride;

  try {
    if (*matrix_run) {
      return run_and_report(
          experiment_from_run_file(game_src, config_path, "matrix"), out_dir,
          flags);
    }
    if (*sg_run) {
      return run_and_report(
          experiment_from_run_file(game_src, config_path, "visbr"), out_dir,
          flags);
    }
    if (*sweep) {
      auto config = zsg::read_json_file(config_path).get<zsg::ExperimentConfig>();
      return run_and_report(std::move(config), out_dir, flags);
    }

    const zsg::AnyGame game = zsg::load_game(game_src);
    json out;
    if (*o_value) {
      if (const auto* m = std::get_if<zsg::MatrixGame>(&game)) {
        const auto sol = zsg::matrix_game_value(m->payoff(zsg::Player::kFirst));
        out = {{"value", sol.value},
               {"maximin", vector_json(sol.maximin)},
               {"minimax", vector_json(sol.minimax)}};
      } else {
        // Minimax values per state for the first player, with the stage
        // strategies of the lookahead game at the fixed point.
        const auto& g = std::get<zsg::StochasticGame>(game);
        const auto fp =
            zsg::minimax_value_iteration(g, zsg::Player::kFirst, gap_tol);
        const auto stage = zsg::bellman_lookahead(g, fp.value, zsg::Player::kFirst);
        json maximin = json::array(), minimax = json::array();
        for (const auto& x : stage) {
          const auto sol = zsg::matrix_game_value(x);
          maximin.push_back(vector_json(sol.maximin));
          minimax.push_back(vector_json(sol.minimax));
        }
        out = {{"value", vector_json(fp.value)},
               {"residual", fp.residual},
               {"maximin", std::move(maximin)},
               {"minimax", std::move(minimax)}};
      }
    } else if (*o_ng) {
      const auto joint =
          zsg::joint_policy_from_json(zsg::read_json_file(policy_path));
      if (const auto* m = std::get_if<zsg::MatrixGame>(&game)) {
        out = {{"ng", zsg::nash_gap_matrix(*m, joint)}};
      } else {
        const auto d = zsg::nash_gap_stochastic_detail(
            std::get<zsg::StochasticGame>(game), joint, gap_tol);
        out = {{"ng", d.gap},
               {"utility", {d.utility[0], d.utility[1]}},
               {"best_utility", {d.best_utility[0], d.best_utility[1]}}};
      }
    } else if (*o_ngtau) {
      const auto& m = require_matrix(game, "oracle ngtau");
      const auto joint =
          zsg::joint_policy_from_json(zsg::read_json_file(policy_path));
      out = {{"ngtau", zsg::regularized_nash_gap(m, joint, tau)}, {"tau", tau}};
    } else if (*o_nashdist) {
      const auto& m = require_matrix(game, "oracle nashdist");
      const auto nd = zsg::nash_distribution(m, tau);
      out = zsg::joint_policy_to_json(nd.joint);
      out["tau"] = tau;
      out["residual"] = nd.residual;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const zsg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

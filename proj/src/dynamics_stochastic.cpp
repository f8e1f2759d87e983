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

#include "zsg/dynamics_stochastic.hpp"

#include <optional>

#include "zsg/dynamics_matrix.hpp"
#include "zsg/error.hpp"
#include "zsg/metrics.hpp"
#include "zsg/operators.hpp"

namespace zsg {

namespace {

bool learns(const VisbrConfig& config, Player p) {
  return p == Player::kFirst || !config.frozen_opponent;
}

int sample_row(Rng& rng, const PolicyTable& table, int row) {
  return rng.sample({table.row(row).data(),
                     static_cast<std::size_t>(table.cols())});
}

}  // namespace

VisbrState init_visbr(const StochasticGame& game, const VisbrConfig& config) {
  const int n_s = game.n_states();
  VisbrState st;
  for (Player p : kPlayers) {
    const int n = game.n_actions(p);
    auto& l = st.learners[index(p)];
    l.v = Vector::Zero(n_s);
    l.q = PolicyTable::Zero(n_s, n);
    l.pi = uniform_policy(n_s, n);
  }
  if (config.frozen_opponent) {
    check_policy_table(*config.frozen_opponent, n_s,
                       game.n_actions(Player::kSecond), "frozen opponent");
    st.learners[1].pi = *config.frozen_opponent;
  }
  st.rngs[0] = Rng(derive_seed(config.seed, kStreamPlayer1, 0));
  st.rngs[1] = Rng(derive_seed(config.seed, kStreamPlayer2, 0));
  st.environment = Rng(derive_seed(config.seed, kStreamEnvironment, 0));
  const Vector& p0 = game.initial_dist();
  st.state = st.environment.sample(
      {p0.data(), static_cast<std::size_t>(p0.size())});
  return st;
}

InnerStepOutcome inner_step(VisbrState& st, const StochasticGame& game,
                            const VisbrConfig& config) {
  const double alpha = config.schedule.alpha_at(st.k);
  const double beta = config.schedule.beta_at(st.k);
  const SoftmaxParams params = config.softmax_params();
  for (Player p : kPlayers) {
    if (!learns(config, p)) continue;
    auto& l = st.learners[index(p)];
    for (int s = 0; s < game.n_states(); ++s) {
      const Vector target =
          smoothed_response(l.q.row(s).transpose(), params, false);
      l.pi.row(s) += beta * (target.transpose() - l.pi.row(s));
    }
  }
  InnerStepOutcome out{};
  out.state = st.state;
  for (Player p : kPlayers) {
    out.actions[index(p)] =
        sample_row(st.rngs[index(p)], st.learners[index(p)].pi, st.state);
  }
  const auto next = game.next_state_dist(st.state, out.actions[0],
                                         out.actions[1]);
  out.next_state = st.environment.sample(next);
  for (Player p : kPlayers) {
    const int own = out.actions[index(p)];
    const int opp = out.actions[index(opponent(p))];
    out.rewards[index(p)] = game.reward(p, st.state)(own, opp);
    if (!learns(config, p)) continue;
    auto& l = st.learners[index(p)];
    const double target =
        out.rewards[index(p)] + game.gamma() * l.v[out.next_state];
    l.q(st.state, own) += alpha * (target - l.q(st.state, own));
  }
  st.state = out.next_state;
  ++st.k;
  ++st.transitions;
  return out;
}

void outer_update(VisbrState& st, const StochasticGame& game,
                  const VisbrConfig& config) {
  for (Player p : kPlayers) {
    if (!learns(config, p)) continue;
    auto& l = st.learners[index(p)];
    for (int s = 0; s < game.n_states(); ++s) {
      l.v[s] = l.pi.row(s).dot(l.q.row(s));
    }
  }
  ++st.t;
  st.k = 0;
}

JointPolicy joint_policy(const VisbrState& st) {
  return {st.learners[0].pi, st.learners[1].pi};
}

namespace {

struct FixedPoints {
  Vector v[2];
};

class Recorder {
 public:
  Recorder(const StochasticGame& game, const VisbrConfig& config,
           TrajectoryRecord& record, std::optional<FixedPoints> fixed)
      : game_(game), config_(config), record_(record),
        fixed_(std::move(fixed)) {
    record_.series = {{"ng", {}, {}},     {"lsum", {}, {}},
                      {"min_pi", {}, {}}, {"q_inf", {}, {}},
                      {"v_inf", {}, {}}};
    if (fixed_) record_.series.push_back({"v_err", {}, {}});
    if (config_.frozen_opponent) record_.series.push_back({"br_gap", {}, {}});
  }

  void record(const VisbrState& st, SeriesIndex at) {
    const JointPolicy joint = joint_policy(st);
    double min_pi = 1.0, q_inf = 0.0, v_inf = 0.0;
    for (Player p : kPlayers) {
      if (!learns(config_, p)) continue;
      const auto& l = st.learners[index(p)];
      min_pi = std::min(min_pi, l.pi.minCoeff());
      q_inf = std::max(q_inf, l.q.cwiseAbs().maxCoeff());
      v_inf = std::max(v_inf, l.v.cwiseAbs().maxCoeff());
    }
    std::size_t i = 0;
    auto& series = record_.series;
    series[i++].push(at, nash_gap_stochastic(game_, joint, config_.gap_tol));
    series[i++].push(
        at, (st.learners[0].v + st.learners[1].v).cwiseAbs().maxCoeff());
    series[i++].push(at, min_pi);
    series[i++].push(at, q_inf);
    series[i++].push(at, v_inf);
    if (fixed_) {
      double err = 0.0;
      for (int p = 0; p < 2; ++p) {
        err += (st.learners[p].v - fixed_->v[p]).cwiseAbs().maxCoeff();
      }
      series[i++].push(at, err);
    }
    if (config_.frozen_opponent) {
      series[i++].push(at, best_response_gap(game_, joint, Player::kFirst,
                                             config_.gap_tol));
    }
  }

 private:
  const StochasticGame& game_;
  const VisbrConfig& config_;
  TrajectoryRecord& record_;
  std::optional<FixedPoints> fixed_;
};

}  // namespace

TrajectoryRecord run_visbr(const StochasticGame& game,
                           const VisbrConfig& config) {
  validate(config);
  TrajectoryRecord record;
  record.config_echo = config;
  record.config_echo["initial_dist"] =
      game.initial_dist_defaulted() ? "uniform (default)" : "given";
  record.warnings =
      check_stepsize_conditions(config, game.a_max(), game.gamma())
          .as_warnings();
  try {
    stationary_distribution(game, uniform_joint_policy(game));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotErgodic) throw;
    record.warnings.push_back(
        "uniform joint policy does not induce an irreducible aperiodic "
        "chain: " +
        std::string(e.what()));
  }

  std::optional<FixedPoints> fixed;
  const std::int64_t size = static_cast<std::int64_t>(game.n_states()) *
                            game.n_actions(Player::kFirst) *
                            game.n_actions(Player::kSecond);
  if (!config.frozen_opponent && size <= config.value_error_budget) {
    FixedPoints fp;
    for (Player p : kPlayers) {
      fp.v[index(p)] = minimax_value_iteration(game, p, 1e-6).value;
    }
    fixed = std::move(fp);
  }

  Recorder recorder(game, config, record, std::move(fixed));
  VisbrState st = init_visbr(game, config);
  recorder.record(st, {0, 0});
  for (std::int64_t t = 0; t < config.outer_iterations; ++t) {
    while (st.k < config.inner_iterations) {
      inner_step(st, game, config);
      if (st.k < config.inner_iterations && st.k % config.record_stride == 0) {
        recorder.record(st, {st.t, st.k});
      }
    }
    outer_update(st, game, config);
    recorder.record(st, {st.t, 0});
  }

  record.final_policy = joint_policy(st);
  for (int p = 0; p < 2; ++p) {
    record.final_q[p] = st.learners[p].q;
    record.final_v[p] = st.learners[p].v;
  }
  record.transitions = st.transitions;
  return record;
}

}  // namespace zsg

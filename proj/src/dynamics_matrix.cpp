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

#include "zsg/dynamics_matrix.hpp"

#include "zsg/error.hpp"
#include "zsg/metrics.hpp"
#include "zsg/operators.hpp"

namespace zsg {

Vector smoothed_response(const Eigen::Ref<const Vector>& q,
                         const SoftmaxParams& params, bool normalize_q) {
  if (normalize_q) {
    const double norm = q.norm();
    if (norm > 0.0) return softmax_explore(q / norm, params);
  }
  return softmax_explore(q, params);
}

MatrixDynamicsState init_matrix_state(const MatrixGame& game,
                                      const MatrixRunConfig& config) {
  return MatrixDynamicsState{
      {MatrixLearner(game.n_actions(Player::kFirst)),
       MatrixLearner(game.n_actions(Player::kSecond))},
      {Rng(derive_seed(config.seed, kStreamPlayer1, 0)),
       Rng(derive_seed(config.seed, kStreamPlayer2, 0))},
      0};
}

MatrixStepOutcome step_matrix(MatrixDynamicsState& state,
                              const MatrixGame& game,
                              const MatrixRunConfig& config) {
  const double alpha = config.schedule.alpha_at(state.k);
  const double beta = config.schedule.beta_at(state.k);
  const SoftmaxParams params = config.softmax_params();
  for (auto& learner : state.learners) {
    learner.update_policy(params, beta, config.normalize_q_in_softmax);
  }
  MatrixStepOutcome out{};
  for (Player p : kPlayers) {
    out.actions[index(p)] = state.learners[index(p)].act(state.rngs[index(p)]);
  }
  for (Player p : kPlayers) {
    const int own = out.actions[index(p)];
    const int opp = out.actions[index(opponent(p))];
    out.rewards[index(p)] = game.payoff(p)(own, opp);
    state.learners[index(p)].update_q(own, out.rewards[index(p)], alpha);
  }
  ++state.k;
  return out;
}

JointPolicy joint_policy(const MatrixDynamicsState& state) {
  JointPolicy joint;
  joint.pi1 = state.learners[0].pi().transpose();
  joint.pi2 = state.learners[1].pi().transpose();
  return joint;
}

TrajectoryRecord run_matrix_dynamics(const MatrixGame& game,
                                     const MatrixRunConfig& config) {
  validate(config);
  TrajectoryRecord record;
  record.config_echo = config;
  record.warnings =
      check_stepsize_conditions(config, game.a_max()).as_warnings();

  record.series = {{"ng", {}, {}},
                   {"ngtau", {}, {}},
                   {"min_pi", {}, {}},
                   {"q_inf", {}, {}}};
  auto& ng = record.series[0];
  auto& ngtau = record.series[1];
  auto& min_pi = record.series[2];
  auto& q_inf = record.series[3];

  MatrixDynamicsState state = init_matrix_state(game, config);
  while (state.k < config.iterations) {
    step_matrix(state, game, config);
    if (state.k % config.record_stride != 0) continue;
    const JointPolicy joint = joint_policy(state);
    const SeriesIndex at{0, state.k};
    ng.push(at, nash_gap_matrix(game, joint));
    ngtau.push(at, regularized_nash_gap(game, joint, config.tau));
    min_pi.push(at, std::min(joint.pi1.minCoeff(), joint.pi2.minCoeff()));
    q_inf.push(at, std::max(state.learners[0].q().cwiseAbs().maxCoeff(),
                            state.learners[1].q().cwiseAbs().maxCoeff()));
  }
  record.final_policy = joint_policy(state);
  record.final_q[0] = state.learners[0].q().transpose();
  record.final_q[1] = state.learners[1].q().transpose();
  record.transitions = state.k;
  return record;
}

}  // namespace zsg

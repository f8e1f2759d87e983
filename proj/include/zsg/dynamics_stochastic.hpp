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

// Value iteration with smoothed best-response dynamics (VI-SBR) for zero-sum
// stochastic games, driven by a single continuing trajectory of states.
//
// Inner step k of outer iteration t, for each learning player:
//   pi(s) <- pi(s) + beta_k (softmax(q(s)) - pi(s))      for every state s
//   A ~ pi(. | S_k), S_{k+1} ~ p(. | S_k, A1, A2)
//   q(S_k, A) <- q(S_k, A) + alpha_k (R(S_k, A, A_opp) + gamma v_t(S_{k+1})
//                                     - q(S_k, A))
// Outer update: v_{t+1}(s) = pi(s)^T q(s); q, pi and the state carry over.

#ifndef ZSG_DYNAMICS_STOCHASTIC_HPP_
#define ZSG_DYNAMICS_STOCHASTIC_HPP_

#include <cstdint>

#include "zsg/config.hpp"
#include "zsg/game.hpp"
#include "zsg/rng.hpp"
#include "zsg/trajectory.hpp"

namespace zsg {

struct VisbrLearner {
  Vector v;        // per state
  PolicyTable q;   // states x own actions
  PolicyTable pi;  // states x own actions

  bool operator==(const VisbrLearner& o) const {
    return v == o.v && same_table(q, o.q) && same_table(pi, o.pi);
  }
};

struct VisbrState {
  VisbrLearner learners[2];
  int state = 0;  // current environment state S_k
  std::int64_t t = 0;
  std::int64_t k = 0;
  std::int64_t transitions = 0;
  Rng rngs[2];
  Rng environment;

  bool operator==(const VisbrState&) const = default;
};

struct InnerStepOutcome {
  int state;
  int next_state;
  int actions[2];
  double rewards[2];
};

// Zero values and q-functions, uniform policies (or the frozen opponent), and
// S_0 drawn from the game's initial distribution.
VisbrState init_visbr(const StochasticGame& game, const VisbrConfig& config);

InnerStepOutcome inner_step(VisbrState& state, const StochasticGame& game,
                            const VisbrConfig& config);

// v(s) <- pi(s)^T q(s) for each learning player, then t += 1 and k = 0.
void outer_update(VisbrState& state, const StochasticGame& game,
                  const VisbrConfig& config);

JointPolicy joint_policy(const VisbrState& state);

// Runs T outer iterations of K inner steps. Rows are recorded at (0, 0), at
// every inner k that is a positive multiple of record_stride below K, and at
// (t + 1, 0) after each outer update. Metrics: ng, lsum, min_pi, q_inf,
// v_inf, v_err when the minimax fixed point fits the budget, and br_gap
// (first player's best-response gap) against a frozen opponent.
TrajectoryRecord run_visbr(const StochasticGame& game,
                           const VisbrConfig& config);

}  // namespace zsg

#endif  // ZSG_DYNAMICS_STOCHASTIC_HPP_

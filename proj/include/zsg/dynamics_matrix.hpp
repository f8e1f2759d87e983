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

// Payoff-based independent learning in zero-sum matrix games.
//
// Each step, for both players:
//   pi <- pi + beta_k (softmax(q) - pi)       (with stale q)
//   A ~ pi                                    (independent draws)
//   q(A) <- q(A) + alpha_k (R(A, A_opp) - q(A))
// The exploring variant replaces the softmax by its eps_bar-uniform mixture.

#ifndef ZSG_DYNAMICS_MATRIX_HPP_
#define ZSG_DYNAMICS_MATRIX_HPP_

#include <cstdint>

#include "zsg/config.hpp"
#include "zsg/game.hpp"
#include "zsg/rng.hpp"
#include "zsg/trajectory.hpp"

namespace zsg {

// Policy the softmax pulls towards for a q vector.
Vector smoothed_response(const Eigen::Ref<const Vector>& q,
                         const SoftmaxParams& params, bool normalize_q);

// One player's side of the dynamics. It sees only its own actions and
// realized payoffs.
class MatrixLearner {
 public:
  explicit MatrixLearner(int n_actions)
      : q_(Vector::Zero(n_actions)),
        pi_(Vector::Constant(n_actions, 1.0 / n_actions)) {}

  void update_policy(const SoftmaxParams& params, double beta,
                     bool normalize_q) {
    pi_ += beta * (smoothed_response(q_, params, normalize_q) - pi_);
  }
  int act(Rng& rng) const {
    return rng.sample({pi_.data(), static_cast<std::size_t>(pi_.size())});
  }
  void update_q(int action, double reward, double alpha) {
    q_[action] += alpha * (reward - q_[action]);
  }

  const Vector& q() const { return q_; }
  const Vector& pi() const { return pi_; }

  bool operator==(const MatrixLearner& o) const {
    return q_ == o.q_ && pi_ == o.pi_;
  }

 private:
  Vector q_;
  Vector pi_;
};

struct MatrixDynamicsState {
  MatrixLearner learners[2];
  Rng rngs[2];
  std::int64_t k = 0;

  bool operator==(const MatrixDynamicsState&) const = default;
};

struct MatrixStepOutcome {
  int actions[2];
  double rewards[2];
};

MatrixDynamicsState init_matrix_state(const MatrixGame& game,
                                      const MatrixRunConfig& config);

// Advances the state by one iteration and reports what each player saw.
MatrixStepOutcome step_matrix(MatrixDynamicsState& state,
                              const MatrixGame& game,
                              const MatrixRunConfig& config);

JointPolicy joint_policy(const MatrixDynamicsState& state);

// Runs K steps and records ng, ngtau, min_pi and q_inf at every
// record_stride-th iterate, indexed by k + 1.
TrajectoryRecord run_matrix_dynamics(const MatrixGame& game,
                                     const MatrixRunConfig& config);

}  // namespace zsg

#endif  // ZSG_DYNAMICS_MATRIX_HPP_

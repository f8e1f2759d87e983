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

// Equilibrium-quality measures.
//
// The entropy-regularized gap is also the Lyapunov function of the matrix
// dynamics; one implementation serves both roles.

#ifndef ZSG_METRICS_HPP_
#define ZSG_METRICS_HPP_

#include "zsg/game.hpp"

namespace zsg {

// sum_p max_mu (mu - pi_p)^T R_p pi_{-p}, clamped at 0.
double nash_gap_matrix(const MatrixGame& game, const JointPolicy& joint);

// Entropy-regularized Nash gap with temperature tau.
double regularized_nash_gap(const MatrixGame& game, const JointPolicy& joint,
                            double tau);

// Same closed form as regularized_nash_gap for an arbitrary payoff pair
// (x1 is |A1| x |A2|, x2 is |A2| x |A1|); no zero-sum requirement.
double generalized_gap(const Matrix& x1, const Matrix& x2,
                       const Eigen::Ref<const Vector>& pi1,
                       const Eigen::Ref<const Vector>& pi2, double tau);

struct NashDistribution {
  JointPolicy joint;
  double residual = 0.0;  // sup-norm change at the final iteration
  double damping = 0.0;   // damping that converged; 0 for the fallback
  int iterations = 0;
};

struct NashDistributionOptions {
  double tol = 1e-12;
  double damping = 0.5;
  double min_damping = 1.0 / 16.0;
  int max_iters = 200000;
};

// Unique joint policy with pi_p = softmax(R_p pi_{-p}, tau) for both players,
// found by damped fixed-point iteration. Halves the damping on failure down
// to `min_damping`, then falls back to an entropy-regularized extragradient
// iteration, and throws kNoConvergence only if that also runs out of
// iterations.
NashDistribution nash_distribution(const MatrixGame& game, double tau,
                                   const NashDistributionOptions& options = {});

// sup_p ||pi_p - softmax(R_p pi_{-p}, tau)||_inf.
double nash_distribution_residual(const MatrixGame& game,
                                  const JointPolicy& joint, double tau);

struct StochasticGapDetail {
  double gap = 0.0;
  double utility[2] = {0.0, 0.0};     // U^p(pi_p, pi_{-p})
  double best_utility[2] = {0.0, 0.0};  // max over deviations
  double sup_norm_bound = 0.0;  // sum_p ||v*_{.,pi_{-p}} - v_pi||_inf
};

// Nash gap of a stochastic game under the initial distribution p_o.
double nash_gap_stochastic(const StochasticGame& game, const JointPolicy& joint,
                           double tol);
StochasticGapDetail nash_gap_stochastic_detail(const StochasticGame& game,
                                               const JointPolicy& joint,
                                               double tol);

// max_pi' U^p(pi', pi_{-p}) - U^p(pi_p, pi_{-p}) for a single player.
double best_response_gap(const StochasticGame& game, const JointPolicy& joint,
                         Player player, double tol);

}  // namespace zsg

#endif  // ZSG_METRICS_HPP_

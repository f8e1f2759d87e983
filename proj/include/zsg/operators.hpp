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

// Stateless operators shared by the dynamics and the metrics: the softmax
// family, entropy, exploration bounds, one-step lookahead and minimax
// Bellman operators, an exact matrix-game solver, single-agent best responses
// against a fixed opponent, and Markov chain diagnostics.

#ifndef ZSG_OPERATORS_HPP_
#define ZSG_OPERATORS_HPP_

#include <optional>
#include <vector>

#include "zsg/game.hpp"

namespace zsg {

struct SoftmaxParams {
  double tau = 1.0;
  double eps_bar = 0.0;  // 0 gives the plain softmax
};

void check_softmax_params(const SoftmaxParams& params);

// sigma_tau(q)(a) = exp(q(a)/tau) / sum_b exp(q(b)/tau), evaluated with the
// maximum logit subtracted.
Vector softmax(const Eigen::Ref<const Vector>& q, double tau);

// eps_bar / |A| + (1 - eps_bar) * softmax(q, tau).
Vector softmax_explore(const Eigen::Ref<const Vector>& q,
                       const SoftmaxParams& params);

// Shannon entropy with 0 log 0 = 0.
double entropy(const Eigen::Ref<const Vector>& mu);

// tau * log(sum exp(x / tau)), i.e. max_mu { mu^T x + tau * entropy(mu) }.
double soft_max_value(const Eigen::Ref<const Vector>& x, double tau);

enum class Variant { kPlain, kExplore };

enum class Setting { kMatrix, kStochastic };

// Guaranteed lower bound on every policy entry along a trajectory of the
// given dynamics. The plain stochastic bound uses the 1/(1-gamma) payoff
// scale; the exploring stochastic bound is eps_bar / A_max.
double exploration_bound(Setting setting, Variant variant,
                         const SoftmaxParams& params, int a_max,
                         std::optional<double> gamma = std::nullopt);

// T^p(v)(s, own, opp) = R_p(s, own, opp) + gamma * E[v(S') | s, own, opp],
// one own x opp matrix per state.
std::vector<Matrix> bellman_lookahead(const StochasticGame& game,
                                      const Eigen::Ref<const Vector>& v,
                                      Player player);

struct MatrixGameSolution {
  double value = 0.0;
  Vector maximin;  // row player's optimal strategy
  Vector minimax;  // column player's optimal strategy
};

// max_x min_y x^T X y for the row player. Exact, via a dense simplex.
MatrixGameSolution matrix_game_value(const Matrix& payoff);

// B^p(v)(s) = val(T^p(v)(s)).
Vector minimax_bellman(const StochasticGame& game,
                       const Eigen::Ref<const Vector>& v, Player player);

struct MinimaxFixedPoint {
  Vector value;
  double residual = 0.0;
  int iterations = 0;
};

// Iterates minimax_bellman from v = 0 until ||B(v) - v||_inf <= tol.
MinimaxFixedPoint minimax_value_iteration(const StochasticGame& game,
                                          Player player, double tol = 1e-6,
                                          int max_iters = 100000);

struct BestResponse {
  Vector value;
  std::vector<int> policy;  // greedy deterministic action per state
};

// Optimal value of the single-agent MDP faced by `player` when the opponent
// plays the stationary policy `opponent` (rows = states).
BestResponse best_response_value(const StochasticGame& game, Player player,
                                 const PolicyTable& opponent, double tol);

// Exact value of the joint policy for `player`: solves v = r + gamma P v.
Vector policy_evaluation(const StochasticGame& game, const JointPolicy& joint,
                         Player player);

// State transition matrix of the chain induced by the joint policy.
Matrix induced_chain(const StochasticGame& game, const JointPolicy& joint);

// Unique stationary distribution of the induced chain. Throws kNotErgodic
// when the chain is reducible or periodic.
Vector stationary_distribution(const StochasticGame& game,
                               const JointPolicy& joint);
Vector stationary_distribution(const Matrix& chain);

}  // namespace zsg

#endif  // ZSG_OPERATORS_HPP_

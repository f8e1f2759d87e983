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

#include "zsg/operators.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "zsg/error.hpp"

namespace zsg {

void check_softmax_params(const SoftmaxParams& params) {
  if (!(params.tau > 0.0) || !std::isfinite(params.tau)) {
    throw Error(ErrorCode::kInvalidConfig, "tau must be positive and finite");
  }
  if (!(params.eps_bar >= 0.0 && params.eps_bar <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "eps_bar must lie in [0,1]");
  }
}

Vector softmax(const Eigen::Ref<const Vector>& q, double tau) {
  if (!q.allFinite()) {
    throw Error(ErrorCode::kNonFiniteInput, "softmax input is not finite");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::kInvalidConfig, "softmax temperature must be > 0");
  }
  Vector out = ((q.array() - q.maxCoeff()) / tau).exp().matrix();
  out /= out.sum();
  return out;
}

Vector softmax_explore(const Eigen::Ref<const Vector>& q,
                       const SoftmaxParams& params) {
  Vector out = softmax(q, params.tau);
  if (params.eps_bar == 0.0) return out;
  const double n = static_cast<double>(q.size());
  out = (params.eps_bar / n + (1.0 - params.eps_bar) * out.array()).matrix();
  return out;
}

double entropy(const Eigen::Ref<const Vector>& mu) {
  if (!is_distribution(mu, 1e-9)) {
    throw Error(ErrorCode::kNotADistribution,
                "entropy requires a probability vector");
  }
  double h = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (mu[i] > 0.0) h -= mu[i] * std::log(mu[i]);
  }
  return std::max(h, 0.0);
}

double soft_max_value(const Eigen::Ref<const Vector>& x, double tau) {
  const double m = x.maxCoeff();
  return m + tau * std::log(((x.array() - m) / tau).exp().sum());
}

double exploration_bound(Setting setting, Variant variant,
                         const SoftmaxParams& params, int a_max,
                         std::optional<double> gamma) {
  check_softmax_params(params);
  const double a = static_cast<double>(a_max);
  if (setting == Setting::kMatrix) {
    const double softmax_floor =
        1.0 / ((a - 1.0) * std::exp(2.0 / params.tau) + 1.0);
    if (variant == Variant::kPlain) return softmax_floor;
    return params.eps_bar / a + (1.0 - params.eps_bar) * softmax_floor;
  }
  if (!gamma) {
    throw Error(ErrorCode::kMissingGamma,
                "stochastic exploration bound needs gamma");
  }
  if (variant == Variant::kExplore) return params.eps_bar / a;
  return 1.0 / (1.0 + (a - 1.0) *
                          std::exp(2.0 / ((1.0 - *gamma) * params.tau)));
}

std::vector<Matrix> bellman_lookahead(const StochasticGame& game,
                                      const Eigen::Ref<const Vector>& v,
                                      Player player) {
  if (v.size() != game.n_states()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "value vector must have one entry per state");
  }
  const int n_own = game.n_actions(player);
  const int n_opp = game.n_actions(opponent(player));
  std::vector<Matrix> out;
  out.reserve(game.n_states());
  for (int s = 0; s < game.n_states(); ++s) {
    Matrix t = game.reward(player, s);
    for (int a = 0; a < n_own; ++a) {
      for (int b = 0; b < n_opp; ++b) {
        const auto next = game.next_state_dist(player, s, a, b);
        double ev = 0.0;
        for (int s2 = 0; s2 < game.n_states(); ++s2) ev += next[s2] * v[s2];
        t(a, b) += game.gamma() * ev;
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

// Solves max 1^T z s.t. M z <= 1, z >= 0 for a strictly positive M with a
// dense tableau and Bland's pivoting rule. Returns the primal z and the dual
// prices y (which solve min 1^T y s.t. M^T y >= 1, y >= 0).
void solve_positive_game_lp(const Matrix& m, Vector& z, Vector& y) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  const int width = cols + rows;  // structural then slack columns
  Matrix tab = Matrix::Zero(rows + 1, width + 1);
  tab.topLeftCorner(rows, cols) = m;
  tab.block(0, cols, rows, rows).setIdentity();
  tab.col(width).head(rows).setOnes();
  tab.row(rows).head(cols).setConstant(-1.0);
  std::vector<int> basis(rows);
  std::iota(basis.begin(), basis.end(), cols);

  constexpr double kPivotEps = 1e-12;
  const int max_pivots = 50 * (rows + cols) + 1000;
  for (int iter = 0;; ++iter) {
    if (iter > max_pivots) {
      throw Error(ErrorCode::kNoConvergence, "simplex pivot limit exceeded");
    }
    int enter = -1;
    for (int j = 0; j < width; ++j) {
      if (tab(rows, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      if (tab(i, enter) <= kPivotEps) continue;
      const double ratio = tab(i, width) / tab(i, enter);
      if (leave < 0 || ratio < best_ratio - kPivotEps ||
          (std::abs(ratio - best_ratio) <= kPivotEps &&
           basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      // Cannot happen for positive M: every column has a positive entry.
      throw Error(ErrorCode::kNoConvergence, "unbounded game LP");
    }
    tab.row(leave) /= tab(leave, enter);
    for (int i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double f = tab(i, enter);
      if (f != 0.0) tab.row(i) -= f * tab.row(leave);
    }
    basis[leave] = enter;
  }
  z = Vector::Zero(cols);
  for (int i = 0; i < rows; ++i) {
    if (basis[i] < cols) z[basis[i]] = tab(i, width);
  }
  y = tab.row(rows).segment(cols, rows).transpose();
}

Vector normalized_nonneg(Vector v) {
  v = v.cwiseMax(0.0);
  return v / v.sum();
}

}  // namespace

MatrixGameSolution matrix_game_value(const Matrix& payoff) {
  if (payoff.size() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "empty payoff matrix");
  }
  if (!payoff.allFinite()) {
    throw Error(ErrorCode::kNonFiniteInput, "payoff matrix is not finite");
  }
  const double shift = 1.0 + payoff.cwiseAbs().maxCoeff();
  const Matrix positive = payoff.array() + shift;
  Vector z, y;
  solve_positive_game_lp(positive, z, y);
  MatrixGameSolution sol;
  sol.minimax = normalized_nonneg(z);
  sol.maximin = normalized_nonneg(y);
  sol.value = sol.maximin.dot(payoff * sol.minimax);
  return sol;
}

Vector minimax_bellman(const StochasticGame& game,
                       const Eigen::Ref<const Vector>& v, Player player) {
  const auto lookahead = bellman_lookahead(game, v, player);
  Vector out(game.n_states());
  for (int s = 0; s < game.n_states(); ++s) {
    out[s] = matrix_game_value(lookahead[s]).value;
  }
  return out;
}

MinimaxFixedPoint minimax_value_iteration(const StochasticGame& game,
                                          Player player, double tol,
                                          int max_iters) {
  MinimaxFixedPoint fp;
  fp.value = Vector::Zero(game.n_states());
  for (int it = 1; it <= max_iters; ++it) {
    Vector next = minimax_bellman(game, fp.value, player);
    fp.residual = (next - fp.value).cwiseAbs().maxCoeff();
    fp.value = std::move(next);
    fp.iterations = it;
    if (fp.residual <= tol) return fp;
  }
  throw Error(ErrorCode::kNoConvergence,
              "minimax value iteration did not reach the tolerance");
}

namespace {

// Opponent-marginalized reward r(s, a) and kernel P(s' | s, a) for `player`.
struct InducedMdp {
  Matrix reward;                    // S x A_own
  std::vector<Matrix> transitions;  // per state: A_own x S
};

InducedMdp marginalize_opponent(const StochasticGame& game, Player player,
                                const PolicyTable& opp) {
  const int n_s = game.n_states();
  const int n_own = game.n_actions(player);
  const int n_opp = game.n_actions(opponent(player));
  InducedMdp mdp;
  mdp.reward = Matrix::Zero(n_s, n_own);
  mdp.transitions.assign(n_s, Matrix::Zero(n_own, n_s));
  for (int s = 0; s < n_s; ++s) {
    const Matrix& r = game.reward(player, s);
    for (int a = 0; a < n_own; ++a) {
      for (int b = 0; b < n_opp; ++b) {
        const double w = opp(s, b);
        if (w == 0.0) continue;
        mdp.reward(s, a) += w * r(a, b);
        const auto next = game.next_state_dist(player, s, a, b);
        for (int s2 = 0; s2 < n_s; ++s2) {
          mdp.transitions[s](a, s2) += w * next[s2];
        }
      }
    }
  }
  return mdp;
}

}  // namespace

BestResponse best_response_value(const StochasticGame& game, Player player,
                                 const PolicyTable& opponent_policy,
                                 double tol) {
  check_policy_table(opponent_policy, game.n_states(),
                     game.n_actions(opponent(player)), "opponent policy");
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "tol must be positive");
  }
  const InducedMdp mdp = marginalize_opponent(game, player, opponent_policy);
  const double gamma = game.gamma();
  const double stop = tol * (1.0 - gamma) / (2.0 * gamma);
  const int n_s = game.n_states();

  BestResponse br;
  br.value = Vector::Zero(n_s);
  br.policy.assign(n_s, 0);
  Vector next(n_s);
  constexpr int kMaxIters = 10'000'000;
  for (int it = 0; it < kMaxIters; ++it) {
    for (int s = 0; s < n_s; ++s) {
      const Vector q =
          mdp.reward.row(s).transpose() + gamma * mdp.transitions[s] * br.value;
      Eigen::Index arg = 0;
      next[s] = q.maxCoeff(&arg);
      br.policy[s] = static_cast<int>(arg);
    }
    const double residual = (next - br.value).cwiseAbs().maxCoeff();
    br.value = next;
    if (residual <= stop) return br;
  }
  throw Error(ErrorCode::kNoConvergence, "best-response value iteration");
}

Matrix induced_chain(const StochasticGame& game, const JointPolicy& joint) {
  check_joint_policy(game, joint);
  const int n_s = game.n_states();
  Matrix chain = Matrix::Zero(n_s, n_s);
  for (int s = 0; s < n_s; ++s) {
    for (int a1 = 0; a1 < game.n_actions(Player::kFirst); ++a1) {
      for (int a2 = 0; a2 < game.n_actions(Player::kSecond); ++a2) {
        const double w = joint.pi1(s, a1) * joint.pi2(s, a2);
        if (w == 0.0) continue;
        const auto next = game.next_state_dist(s, a1, a2);
        for (int s2 = 0; s2 < n_s; ++s2) chain(s, s2) += w * next[s2];
      }
    }
  }
  return chain;
}

Vector policy_evaluation(const StochasticGame& game, const JointPolicy& joint,
                         Player player) {
  const Matrix chain = induced_chain(game, joint);
  const PolicyTable& own = joint.of(player);
  const PolicyTable& opp = joint.of(opponent(player));
  const int n_s = game.n_states();
  Vector reward(n_s);
  for (int s = 0; s < n_s; ++s) {
    reward[s] = own.row(s) * game.reward(player, s) * opp.row(s).transpose();
  }
  const Matrix system = Matrix::Identity(n_s, n_s) - game.gamma() * chain;
  return system.partialPivLu().solve(reward);
}

namespace {

constexpr double kEdgeThreshold = 1e-12;

std::vector<int> bfs_levels(const Matrix& chain, bool reverse) {
  const int n = static_cast<int>(chain.rows());
  std::vector<int> level(n, -1);
  std::vector<int> queue{0};
  level[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int w = 0; w < n; ++w) {
      const double p = reverse ? chain(w, u) : chain(u, w);
      if (p > kEdgeThreshold && level[w] < 0) {
        level[w] = level[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return level;
}

}  // namespace

Vector stationary_distribution(const Matrix& chain) {
  const int n = static_cast<int>(chain.rows());
  if (n == 0 || chain.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "chain must be square");
  }
  const auto forward = bfs_levels(chain, false);
  const auto backward = bfs_levels(chain, true);
  for (int s = 0; s < n; ++s) {
    if (forward[s] < 0 || backward[s] < 0) {
      throw Error(ErrorCode::kNotErgodic, "induced chain is reducible");
    }
  }
  // For an irreducible chain the period is the gcd of
  // level(u) + 1 - level(w) over all edges u -> w of a BFS from one state.
  int period = 0;
  for (int u = 0; u < n; ++u) {
    for (int w = 0; w < n; ++w) {
      if (chain(u, w) > kEdgeThreshold) {
        period = std::gcd(period, std::abs(forward[u] + 1 - forward[w]));
      }
    }
  }
  if (period != 1) {
    throw Error(ErrorCode::kNotErgodic,
                "induced chain is periodic with period " +
                    std::to_string(period));
  }
  Matrix system = chain.transpose() - Matrix::Identity(n, n);
  system.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs[n - 1] = 1.0;
  Vector mu = system.fullPivLu().solve(rhs);
  return normalized_nonneg(std::move(mu));
}

Vector stationary_distribution(const StochasticGame& game,
                               const JointPolicy& joint) {
  return stationary_distribution(induced_chain(game, joint));
}

}  // namespace zsg

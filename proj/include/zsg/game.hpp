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

// Game descriptions, policies, and their validation.
//
// Payoffs are stored from each player's own perspective: for a matrix game
// `payoff(kFirst)` is |A1| x |A2| and `payoff(kSecond)` is |A2| x |A1|, so
// that a player's expected payoff vector against the opponent's mixed
// strategy is always `payoff(p) * opponent_strategy`.

#ifndef ZSG_GAME_HPP_
#define ZSG_GAME_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <optional>
#include <span>
#include <vector>

namespace zsg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Per-state table (policies, q-functions): one row per state, one column per
// own action. Row-major so each state's row is contiguous.
using PolicyTable =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kZeroSumTolerance = 1e-12;
inline constexpr double kProbabilityTolerance = 1e-12;

enum class Player : int { kFirst = 0, kSecond = 1 };

constexpr Player opponent(Player p) {
  return p == Player::kFirst ? Player::kSecond : Player::kFirst;
}
constexpr int index(Player p) { return static_cast<int>(p); }
inline constexpr Player kPlayers[] = {Player::kFirst, Player::kSecond};

enum class ZeroSumCheck { kRequired, kRelaxed };

class MatrixGame {
 public:
  int n_actions(Player p) const {
    return static_cast<int>(payoff(p).rows());
  }
  int a_max() const {
    return std::max(n_actions(Player::kFirst), n_actions(Player::kSecond));
  }
  const Matrix& payoff(Player p) const {
    return p == Player::kFirst ? r1_ : r2_;
  }
  bool operator==(const MatrixGame& other) const;

 private:
  friend MatrixGame validate_matrix_game(const Matrix&,
                                         const std::optional<Matrix>&,
                                         ZeroSumCheck);
  Matrix r1_;
  Matrix r2_;
};

// Validates a payoff pair. `r2` defaults to -r1^T when omitted.
MatrixGame validate_matrix_game(
    const Matrix& r1, const std::optional<Matrix>& r2 = std::nullopt,
    ZeroSumCheck check = ZeroSumCheck::kRequired);

struct RawStochasticGame {
  int n_states = 0;
  int n_actions_1 = 0;
  int n_actions_2 = 0;
  std::vector<Matrix> r1;                 // per state, |A1| x |A2|
  std::optional<std::vector<Matrix>> r2;  // per state, |A2| x |A1|
  // Flattened p(s' | s, a1, a2), index ((s * A1 + a1) * A2 + a2) * S + s'.
  std::vector<double> transition;
  double gamma = 0.0;
  std::optional<Vector> initial_dist;
};

class StochasticGame {
 public:
  int n_states() const { return n_states_; }
  int n_actions(Player p) const {
    return p == Player::kFirst ? n_actions_1_ : n_actions_2_;
  }
  int a_max() const { return std::max(n_actions_1_, n_actions_2_); }
  double gamma() const { return gamma_; }

  // Own-perspective reward matrix at state s (own actions x opponent actions).
  const Matrix& reward(Player p, int s) const {
    return p == Player::kFirst ? r1_[s] : r2_[s];
  }
  std::span<const double> next_state_dist(int s, int a1, int a2) const {
    const auto offset = (static_cast<std::size_t>(s) * n_actions_1_ + a1) *
                            n_actions_2_ +
                        a2;
    return {transition_.data() + offset * n_states_,
            static_cast<std::size_t>(n_states_)};
  }
  // Same as next_state_dist but indexed from player p's point of view.
  std::span<const double> next_state_dist(Player p, int s, int own,
                                          int opp) const {
    return p == Player::kFirst ? next_state_dist(s, own, opp)
                               : next_state_dist(s, opp, own);
  }
  const Vector& initial_dist() const { return initial_dist_; }
  bool initial_dist_defaulted() const { return initial_dist_defaulted_; }

  RawStochasticGame to_raw() const;
  bool operator==(const StochasticGame& other) const;

 private:
  friend StochasticGame validate_stochastic_game(const RawStochasticGame&);
  int n_states_ = 0;
  int n_actions_1_ = 0;
  int n_actions_2_ = 0;
  std::vector<Matrix> r1_;
  std::vector<Matrix> r2_;
  std::vector<double> transition_;
  double gamma_ = 0.0;
  Vector initial_dist_;
  bool initial_dist_defaulted_ = false;
};

StochasticGame validate_stochastic_game(const RawStochasticGame& raw);

// Single-state game with p(s | s, ., .) = 1 whose stage game is `game`.
StochasticGame embed_matrix_game(const MatrixGame& game, double gamma);

struct JointPolicy {
  PolicyTable pi1;
  PolicyTable pi2;

  const PolicyTable& of(Player p) const {
    return p == Player::kFirst ? pi1 : pi2;
  }
  PolicyTable& of(Player p) { return p == Player::kFirst ? pi1 : pi2; }
  bool operator==(const JointPolicy& other) const;
};

// Exact equality including shape.
bool same_table(const PolicyTable& a, const PolicyTable& b);

PolicyTable uniform_policy(int n_states, int n_actions);
JointPolicy uniform_joint_policy(const MatrixGame& game);
JointPolicy uniform_joint_policy(const StochasticGame& game);

bool is_distribution(const Eigen::Ref<const Vector>& v,
                     double tol = kProbabilityTolerance);

// Throws kNotADistribution unless every row is a probability vector.
void check_policy_table(const PolicyTable& table, int n_states, int n_actions,
                        const char* what);
void check_joint_policy(const MatrixGame& game, const JointPolicy& joint);
void check_joint_policy(const StochasticGame& game, const JointPolicy& joint);

}  // namespace zsg

#endif  // ZSG_GAME_HPP_

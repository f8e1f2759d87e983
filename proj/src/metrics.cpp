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

#include "zsg/metrics.hpp"

#include <cmath>
#include <optional>

#include "zsg/error.hpp"
#include "zsg/operators.hpp"

namespace zsg {

namespace {

void check_strategy(const Eigen::Ref<const Vector>& pi, Eigen::Index n,
                    const char* what) {
  if (pi.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " has the wrong length");
  }
}

double regularized_term(const Matrix& x, const Eigen::Ref<const Vector>& own,
                        const Eigen::Ref<const Vector>& opp, double tau) {
  const Vector payoff = x * opp;
  return soft_max_value(payoff, tau) - own.dot(payoff) - tau * entropy(own);
}

}  // namespace

double nash_gap_matrix(const MatrixGame& game, const JointPolicy& joint) {
  check_joint_policy(game, joint);
  double gap = 0.0;
  for (Player p : kPlayers) {
    const Vector own = joint.of(p).row(0).transpose();
    const Vector opp = joint.of(opponent(p)).row(0).transpose();
    const Vector payoff = game.payoff(p) * opp;
    gap += payoff.maxCoeff() - own.dot(payoff);
  }
  return std::max(gap, 0.0);
}

double regularized_nash_gap(const MatrixGame& game, const JointPolicy& joint,
                            double tau) {
  check_joint_policy(game, joint);
  return generalized_gap(game.payoff(Player::kFirst),
                         game.payoff(Player::kSecond),
                         joint.pi1.row(0).transpose(),
                         joint.pi2.row(0).transpose(), tau);
}

double generalized_gap(const Matrix& x1, const Matrix& x2,
                       const Eigen::Ref<const Vector>& pi1,
                       const Eigen::Ref<const Vector>& pi2, double tau) {
  if (x2.rows() != x1.cols() || x2.cols() != x1.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "payoff pair shapes are inconsistent");
  }
  check_strategy(pi1, x1.rows(), "pi1");
  check_strategy(pi2, x2.rows(), "pi2");
  if (!(tau > 0.0)) throw Error(ErrorCode::kInvalidConfig, "tau must be > 0");
  const double value = regularized_term(x1, pi1, pi2, tau) +
                       regularized_term(x2, pi2, pi1, tau);
  return std::max(value, 0.0);
}

double nash_distribution_residual(const MatrixGame& game,
                                  const JointPolicy& joint, double tau) {
  double r = 0.0;
  for (Player p : kPlayers) {
    const Vector opp = joint.of(opponent(p)).row(0).transpose();
    const Vector target = softmax(game.payoff(p) * opp, tau);
    r = std::max(
        r, (joint.of(p).row(0).transpose() - target).cwiseAbs().maxCoeff());
  }
  return r;
}

namespace {

// Normalized exp of a log-weight vector.
Vector normalize_log(const Vector& log_w) {
  Vector w = (log_w.array() - log_w.maxCoeff()).exp().matrix();
  return w / w.sum();
}

// Entropy-regularized extragradient: a predictive multiplicative-weights
// step followed by the corrected step. Contracts at rate 1 - eta * tau for
// eta <= 1 / (tau + 2 max|R|), so it converges for every tau > 0.
std::optional<NashDistribution> extragradient(
    const MatrixGame& game, double tau, const NashDistributionOptions& o) {
  const Matrix& r1 = game.payoff(Player::kFirst);
  const Matrix& r2 = game.payoff(Player::kSecond);
  const double scale = std::max(r1.cwiseAbs().maxCoeff(), r2.cwiseAbs().maxCoeff());
  const double eta = 1.0 / (tau + 2.0 * scale);
  const double keep = 1.0 - eta * tau;
  JointPolicy joint = uniform_joint_policy(game);
  Vector p1 = joint.pi1.row(0).transpose();
  Vector p2 = joint.pi2.row(0).transpose();
  for (int it = 1; it <= o.max_iters; ++it) {
    const Vector l1 = keep * p1.array().log().matrix();
    const Vector l2 = keep * p2.array().log().matrix();
    const Vector b1 = normalize_log(l1 + eta * r1 * p2);
    const Vector b2 = normalize_log(l2 + eta * r2 * p1);
    const Vector n1 = normalize_log(l1 + eta * r1 * b2);
    const Vector n2 = normalize_log(l2 + eta * r2 * b1);
    const double change = std::max((n1 - p1).cwiseAbs().maxCoeff(),
                                   (n2 - p2).cwiseAbs().maxCoeff());
    p1 = n1;
    p2 = n2;
    if (!std::isfinite(change)) return std::nullopt;
    if (change <= o.tol) {
      joint.pi1.row(0) = p1.transpose();
      joint.pi2.row(0) = p2.transpose();
      return NashDistribution{std::move(joint), change, 0.0, it};
    }
  }
  return std::nullopt;
}

}  // namespace

NashDistribution nash_distribution(const MatrixGame& game, double tau,
                                   const NashDistributionOptions& options) {
  if (!(tau > 0.0)) throw Error(ErrorCode::kInvalidConfig, "tau must be > 0");
  for (double eta = options.damping; eta >= options.min_damping;
       eta /= 2.0) {
    JointPolicy joint = uniform_joint_policy(game);
    for (int it = 1; it <= options.max_iters; ++it) {
      // Simultaneous (Jacobi) update of both players.
      const Vector t1 = softmax(
          game.payoff(Player::kFirst) * joint.pi2.row(0).transpose(), tau);
      const Vector t2 = softmax(
          game.payoff(Player::kSecond) * joint.pi1.row(0).transpose(), tau);
      const Vector n1 = (1.0 - eta) * joint.pi1.row(0).transpose() + eta * t1;
      const Vector n2 = (1.0 - eta) * joint.pi2.row(0).transpose() + eta * t2;
      const double change =
          std::max((n1 - joint.pi1.row(0).transpose()).cwiseAbs().maxCoeff(),
                   (n2 - joint.pi2.row(0).transpose()).cwiseAbs().maxCoeff());
      joint.pi1.row(0) = n1.transpose() / n1.sum();
      joint.pi2.row(0) = n2.transpose() / n2.sum();
      if (!std::isfinite(change)) break;
      if (change <= options.tol) {
        return {std::move(joint), change, eta, it};
      }
    }
  }
  if (auto fallback = extragradient(game, tau, options)) return *fallback;
  throw Error(ErrorCode::kNoConvergence,
              "Nash distribution iteration did not converge");
}

namespace {

double utility(const StochasticGame& game, const Vector& v) {
  return game.initial_dist().dot(v);
}

}  // namespace

StochasticGapDetail nash_gap_stochastic_detail(const StochasticGame& game,
                                               const JointPolicy& joint,
                                               double tol) {
  check_joint_policy(game, joint);
  StochasticGapDetail d;
  double gap = 0.0;
  for (Player p : kPlayers) {
    const Vector achieved = policy_evaluation(game, joint, p);
    const BestResponse br =
        best_response_value(game, p, joint.of(opponent(p)), tol);
    d.utility[index(p)] = utility(game, achieved);
    d.best_utility[index(p)] = utility(game, br.value);
    gap += d.best_utility[index(p)] - d.utility[index(p)];
    d.sup_norm_bound += (br.value - achieved).cwiseAbs().maxCoeff();
  }
  d.gap = std::max(gap, 0.0);
  return d;
}

double nash_gap_stochastic(const StochasticGame& game, const JointPolicy& joint,
                           double tol) {
  return nash_gap_stochastic_detail(game, joint, tol).gap;
}

double best_response_gap(const StochasticGame& game, const JointPolicy& joint,
                         Player player, double tol) {
  check_joint_policy(game, joint);
  const Vector achieved = policy_evaluation(game, joint, player);
  const BestResponse br =
      best_response_value(game, player, joint.of(opponent(player)), tol);
  return std::max(utility(game, br.value) - utility(game, achieved), 0.0);
}

}  // namespace zsg

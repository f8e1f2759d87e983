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

#include "zsg/game.hpp"

#include <cmath>
#include <sstream>

#include "zsg/error.hpp"

namespace zsg {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kPayoffOutOfRange: return "PayoffOutOfRange";
    case ErrorCode::kNotZeroSum: return "NotZeroSum";
    case ErrorCode::kBadTransitionRow: return "BadTransitionRow";
    case ErrorCode::kBadDiscount: return "BadDiscount";
    case ErrorCode::kBadDistribution: return "BadDistribution";
    case ErrorCode::kNonFiniteInput: return "NonFiniteInput";
    case ErrorCode::kNotADistribution: return "NotADistribution";
    case ErrorCode::kMissingGamma: return "MissingGamma";
    case ErrorCode::kNotErgodic: return "NotErgodic";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kGridMismatch: return "GridMismatch";
    case ErrorCode::kNonPositiveValues: return "NonPositiveValues";
    case ErrorCode::kOutputExists: return "OutputExists";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

void check_payoff_range(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kNonFiniteInput,
                std::string(what) + " has non-finite entries");
  }
  if (m.size() > 0 && m.cwiseAbs().maxCoeff() > 1.0) {
    std::ostringstream os;
    os << what << " has entry of magnitude " << m.cwiseAbs().maxCoeff()
       << " > 1";
    throw Error(ErrorCode::kPayoffOutOfRange, os.str());
  }
}

}  // namespace

MatrixGame validate_matrix_game(const Matrix& r1,
                                const std::optional<Matrix>& r2,
                                ZeroSumCheck check) {
  if (r1.rows() < 1 || r1.cols() < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "R1 must be non-empty");
  }
  Matrix r2_value = r2 ? *r2 : Matrix(-r1.transpose());
  if (r2_value.rows() != r1.cols() || r2_value.cols() != r1.rows()) {
    std::ostringstream os;
    os << "R1 is " << r1.rows() << "x" << r1.cols() << " so R2 must be "
       << r1.cols() << "x" << r1.rows() << ", got " << r2_value.rows() << "x"
       << r2_value.cols();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  check_payoff_range(r1, "R1");
  check_payoff_range(r2_value, "R2");
  if (check == ZeroSumCheck::kRequired) {
    const double err = (r1 + r2_value.transpose()).cwiseAbs().maxCoeff();
    if (err > kZeroSumTolerance) {
      std::ostringstream os;
      os << "max |R1 + R2^T| = " << err;
      throw Error(ErrorCode::kNotZeroSum, os.str());
    }
  }
  MatrixGame game;
  game.r1_ = r1;
  game.r2_ = std::move(r2_value);
  return game;
}

StochasticGame validate_stochastic_game(const RawStochasticGame& raw) {
  const int n_s = raw.n_states;
  const int n1 = raw.n_actions_1;
  const int n2 = raw.n_actions_2;
  if (n_s < 1 || n1 < 1 || n2 < 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state and action counts must be positive");
  }
  if (!(raw.gamma > 0.0 && raw.gamma < 1.0)) {
    std::ostringstream os;
    os << "gamma must lie in (0,1), got " << raw.gamma;
    throw Error(ErrorCode::kBadDiscount, os.str());
  }
  if (static_cast<int>(raw.r1.size()) != n_s) {
    throw Error(ErrorCode::kDimensionMismatch, "R1 needs one matrix per state");
  }
  StochasticGame game;
  game.n_states_ = n_s;
  game.n_actions_1_ = n1;
  game.n_actions_2_ = n2;
  game.gamma_ = raw.gamma;
  game.r1_ = raw.r1;
  if (raw.r2) {
    if (static_cast<int>(raw.r2->size()) != n_s) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "R2 needs one matrix per state");
    }
    game.r2_ = *raw.r2;
  } else {
    game.r2_.reserve(n_s);
    for (const auto& m : raw.r1) game.r2_.emplace_back(-m.transpose());
  }
  for (int s = 0; s < n_s; ++s) {
    const Matrix& a = game.r1_[s];
    const Matrix& b = game.r2_[s];
    if (a.rows() != n1 || a.cols() != n2 || b.rows() != n2 || b.cols() != n1) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "reward matrices at state " + std::to_string(s) +
                      " do not match the action counts");
    }
    check_payoff_range(a, "R1");
    check_payoff_range(b, "R2");
    const double err = (a + b.transpose()).cwiseAbs().maxCoeff();
    if (err > kZeroSumTolerance) {
      std::ostringstream os;
      os << "state " << s << ": max |R1 + R2^T| = " << err;
      throw Error(ErrorCode::kNotZeroSum, os.str());
    }
  }

  const std::size_t expected =
      static_cast<std::size_t>(n_s) * n1 * n2 * static_cast<std::size_t>(n_s);
  if (raw.transition.size() != expected) {
    throw Error(ErrorCode::kDimensionMismatch,
                "transition has " + std::to_string(raw.transition.size()) +
                    " entries, expected " + std::to_string(expected));
  }
  game.transition_ = raw.transition;
  for (int s = 0; s < n_s; ++s) {
    for (int a1 = 0; a1 < n1; ++a1) {
      for (int a2 = 0; a2 < n2; ++a2) {
        double sum = 0.0;
        for (double p : game.next_state_dist(s, a1, a2)) {
          if (!std::isfinite(p) || p < 0.0) {
            throw Error(ErrorCode::kBadTransitionRow,
                        "negative or non-finite transition probability");
          }
          sum += p;
        }
        if (std::abs(sum - 1.0) > kProbabilityTolerance) {
          std::ostringstream os;
          os << "p(.|" << s << "," << a1 << "," << a2 << ") sums to " << sum;
          throw Error(ErrorCode::kBadTransitionRow, os.str());
        }
      }
    }
  }

  if (raw.initial_dist) {
    if (raw.initial_dist->size() != n_s) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "initial_dist must have one entry per state");
    }
    if (!is_distribution(*raw.initial_dist)) {
      throw Error(ErrorCode::kBadDistribution,
                  "initial_dist is not a probability vector");
    }
    game.initial_dist_ = *raw.initial_dist;
  } else {
    game.initial_dist_ = Vector::Constant(n_s, 1.0 / n_s);
    game.initial_dist_defaulted_ = true;
  }
  return game;
}

RawStochasticGame StochasticGame::to_raw() const {
  RawStochasticGame raw;
  raw.n_states = n_states_;
  raw.n_actions_1 = n_actions_1_;
  raw.n_actions_2 = n_actions_2_;
  raw.r1 = r1_;
  raw.r2 = r2_;
  raw.transition = transition_;
  raw.gamma = gamma_;
  if (!initial_dist_defaulted_) raw.initial_dist = initial_dist_;
  return raw;
}

bool StochasticGame::operator==(const StochasticGame& other) const {
  if (n_states_ != other.n_states_ || n_actions_1_ != other.n_actions_1_ ||
      n_actions_2_ != other.n_actions_2_) {
    return false;
  }
  return r1_ == other.r1_ && r2_ == other.r2_ &&
         transition_ == other.transition_ &&
         gamma_ == other.gamma_ && initial_dist_ == other.initial_dist_ &&
         initial_dist_defaulted_ == other.initial_dist_defaulted_;
}

StochasticGame embed_matrix_game(const MatrixGame& game, double gamma) {
  RawStochasticGame raw;
  raw.n_states = 1;
  raw.n_actions_1 = game.n_actions(Player::kFirst);
  raw.n_actions_2 = game.n_actions(Player::kSecond);
  raw.r1 = {game.payoff(Player::kFirst)};
  raw.r2 = std::vector<Matrix>{game.payoff(Player::kSecond)};
  raw.transition.assign(
      static_cast<std::size_t>(raw.n_actions_1) * raw.n_actions_2, 1.0);
  raw.gamma = gamma;
  return validate_stochastic_game(raw);
}

bool same_table(const PolicyTable& a, const PolicyTable& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool JointPolicy::operator==(const JointPolicy& other) const {
  return same_table(pi1, other.pi1) && same_table(pi2, other.pi2);
}

bool MatrixGame::operator==(const MatrixGame& other) const {
  auto same = [](const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
  };
  return same(r1_, other.r1_) && same(r2_, other.r2_);
}

PolicyTable uniform_policy(int n_states, int n_actions) {
  return PolicyTable::Constant(n_states, n_actions, 1.0 / n_actions);
}

JointPolicy uniform_joint_policy(const MatrixGame& game) {
  return {uniform_policy(1, game.n_actions(Player::kFirst)),
          uniform_policy(1, game.n_actions(Player::kSecond))};
}

JointPolicy uniform_joint_policy(const StochasticGame& game) {
  return {uniform_policy(game.n_states(), game.n_actions(Player::kFirst)),
          uniform_policy(game.n_states(), game.n_actions(Player::kSecond))};
}

bool is_distribution(const Eigen::Ref<const Vector>& v, double tol) {
  if (v.size() == 0 || !v.allFinite() || v.minCoeff() < 0.0) return false;
  return std::abs(v.sum() - 1.0) <= tol;
}

void check_policy_table(const PolicyTable& table, int n_states, int n_actions,
                        const char* what) {
  if (table.rows() != n_states || table.cols() != n_actions) {
    std::ostringstream os;
    os << what << " is " << table.rows() << "x" << table.cols()
       << ", expected " << n_states << "x" << n_actions;
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  for (int s = 0; s < n_states; ++s) {
    if (!is_distribution(table.row(s).transpose())) {
      throw Error(ErrorCode::kNotADistribution,
                  std::string(what) + " row " + std::to_string(s) +
                      " is not a probability vector");
    }
  }
}

void check_joint_policy(const MatrixGame& game, const JointPolicy& joint) {
  check_policy_table(joint.pi1, 1, game.n_actions(Player::kFirst), "pi1");
  check_policy_table(joint.pi2, 1, game.n_actions(Player::kSecond), "pi2");
}

void check_joint_policy(const StochasticGame& game, const JointPolicy& joint) {
  check_policy_table(joint.pi1, game.n_states(),
                     game.n_actions(Player::kFirst), "pi1");
  check_policy_table(joint.pi2, game.n_states(),
                     game.n_actions(Player::kSecond), "pi2");
}

}  // namespace zsg

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

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "zsg/game_io.hpp"

namespace zsg {
namespace {

using testing::Gen;

const Matrix kPennies{{1.0, -1.0}, {-1.0, 1.0}};

TEST(ValidateMatrixGame, MatchingPennies) {
  const MatrixGame g = validate_matrix_game(kPennies, Matrix(-kPennies.transpose()));
  EXPECT_EQ(g.a_max(), 2);
  EXPECT_EQ(g.n_actions(Player::kFirst), 2);
  EXPECT_TRUE(g.payoff(Player::kSecond).isApprox(-kPennies.transpose()));
}

TEST(ValidateMatrixGame, Errors) {
  EXPECT_ZSG_ERROR(validate_matrix_game(Matrix{{2.0}}, Matrix{{-2.0}}),
                   ErrorCode::kPayoffOutOfRange);
  EXPECT_ZSG_ERROR(validate_matrix_game(Matrix{{1.0, 0.0}, {0.0, 1.0}},
                                        Matrix::Zero(2, 2)),
                   ErrorCode::kNotZeroSum);
  EXPECT_ZSG_ERROR(validate_matrix_game(kPennies, Matrix::Zero(3, 2)),
                   ErrorCode::kDimensionMismatch);
  EXPECT_ZSG_ERROR(validate_matrix_game(Matrix(0, 0)),
                   ErrorCode::kDimensionMismatch);
  EXPECT_ZSG_ERROR(
      validate_matrix_game(Matrix{{std::numeric_limits<double>::quiet_NaN()}}),
      ErrorCode::kNonFiniteInput);
}

TEST(ValidateMatrixGame, RelaxedAcceptsGeneralSum) {
  const MatrixGame g = validate_matrix_game(
      Matrix{{1.0, 0.0}, {0.0, 1.0}}, Matrix::Zero(2, 2), ZeroSumCheck::kRelaxed);
  EXPECT_EQ(g.payoff(Player::kSecond), Matrix::Zero(2, 2));
}

TEST(ValidateMatrixGame, IdempotentAndZeroSum) {
  Gen gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixGame g = testing::random_matrix_game(
        gen, testing::uniform_int(gen, 1, 4), testing::uniform_int(gen, 1, 4));
    const MatrixGame again = validate_matrix_game(
        g.payoff(Player::kFirst), g.payoff(Player::kSecond));
    EXPECT_EQ(g, again);
    const double residual =
        (g.payoff(Player::kFirst) + g.payoff(Player::kSecond).transpose())
            .cwiseAbs()
            .maxCoeff();
    EXPECT_LE(residual, kZeroSumTolerance);
  }
}

TEST(ValidateStochasticGame, EmbeddedPennies) {
  const StochasticGame g = embed_matrix_game(validate_matrix_game(kPennies), 0.5);
  EXPECT_EQ(g.n_states(), 1);
  EXPECT_DOUBLE_EQ(g.next_state_dist(0, 1, 0)[0], 1.0);
  EXPECT_TRUE(g.initial_dist_defaulted());
  EXPECT_DOUBLE_EQ(g.initial_dist()[0], 1.0);
}

RawStochasticGame two_state_raw() {
  RawStochasticGame raw;
  raw.n_states = 2;
  raw.n_actions_1 = 1;
  raw.n_actions_2 = 1;
  raw.r1 = {Matrix{{0.5}}, Matrix{{-0.25}}};
  raw.transition = {0.5, 0.5, 0.1, 0.9};
  raw.gamma = 0.9;
  return raw;
}

TEST(ValidateStochasticGame, Errors) {
  auto raw = two_state_raw();
  raw.transition = {0.5, 0.4, 0.1, 0.9};
  EXPECT_ZSG_ERROR(validate_stochastic_game(raw), ErrorCode::kBadTransitionRow);
  raw = two_state_raw();
  raw.transition = {1.5, -0.5, 0.1, 0.9};
  EXPECT_ZSG_ERROR(validate_stochastic_game(raw), ErrorCode::kBadTransitionRow);
  raw = two_state_raw();
  raw.gamma = 1.0;
  EXPECT_ZSG_ERROR(validate_stochastic_game(raw), ErrorCode::kBadDiscount);
  raw.gamma = 0.0;
  EXPECT_ZSG_ERROR(validate_stochastic_game(raw), ErrorCode::kBadDiscount);
  raw = two_state_raw();
  raw.r1[1](0, 0) = 1.5;
  EXPECT_ZSG_ERROR(validate_stochastic_game(raw), ErrorCode::kPayoffOutOfRange);
  raw = two_state_raw();
  raw.r2 = std::vector<Matrix>{Matrix{{-0.5}}, Matrix{{0.3}}};
  EXPECT_ZSG_ERROR(validate_stochastic_game(raw), ErrorCode::kNotZeroSum);
  raw = two_state_raw();
  raw.initial_dist = Vector{{0.7, 0.7}};
  EXPECT_ZSG_ERROR(validate_stochastic_game(raw), ErrorCode::kBadDistribution);
  raw = two_state_raw();
  raw.transition.pop_back();
  EXPECT_ZSG_ERROR(validate_stochastic_game(raw), ErrorCode::kDimensionMismatch);
}

TEST(ValidateStochasticGame, DefaultsAndIdempotence) {
  const StochasticGame g = validate_stochastic_game(two_state_raw());
  EXPECT_TRUE(g.initial_dist().isApprox(Vector{{0.5, 0.5}}));
  EXPECT_DOUBLE_EQ(g.reward(Player::kSecond, 1)(0, 0), 0.25);
  EXPECT_EQ(validate_stochastic_game(g.to_raw()), g);

  Gen gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = testing::random_stochastic_game(gen, 3, 2, 3, 0.7);
    EXPECT_EQ(validate_stochastic_game(r.to_raw()), r);
    for (int s = 0; s < 3; ++s) {
      EXPECT_LE((r.reward(Player::kFirst, s) +
                 r.reward(Player::kSecond, s).transpose())
                    .cwiseAbs()
                    .maxCoeff(),
                kZeroSumTolerance);
    }
  }
}

TEST(ValidateStochasticGame, PlayerPerspectiveTransitions) {
  Gen gen(5);
  const auto g = testing::random_stochastic_game(gen, 2, 2, 3, 0.5);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 3; ++b) {
      const auto p1 = g.next_state_dist(Player::kFirst, 1, a, b);
      const auto p2 = g.next_state_dist(Player::kSecond, 1, b, a);
      EXPECT_EQ(p1.data(), p2.data());
    }
  }
}

TEST(Policies, UniformAndChecks) {
  const auto joint = uniform_joint_policy(builtin_matrix_game("rps"));
  EXPECT_EQ(joint.pi1.cols(), 3);
  EXPECT_DOUBLE_EQ(joint.pi2(0, 2), 1.0 / 3.0);
  const MatrixGame mp = builtin_matrix_game("mp");
  JointPolicy bad = uniform_joint_policy(mp);
  bad.pi1(0, 0) = 0.6;
  EXPECT_ZSG_ERROR(check_joint_policy(mp, bad), ErrorCode::kNotADistribution);
  bad = uniform_joint_policy(mp);
  bad.pi2 = uniform_policy(1, 3);
  EXPECT_ZSG_ERROR(check_joint_policy(mp, bad), ErrorCode::kDimensionMismatch);
  EXPECT_FALSE(uniform_joint_policy(mp) == bad);
}

TEST(GameIo, MatrixRoundTrip) {
  const auto doc = nlohmann::json::parse(R"({"type": "matrix",
      "R1": [[0.5, -1], [0.25, 0]]})");
  const AnyGame g = game_from_json(doc);
  const auto& m = std::get<MatrixGame>(g);
  EXPECT_DOUBLE_EQ(m.payoff(Player::kSecond)(0, 1), -0.25);
  EXPECT_EQ(std::get<MatrixGame>(game_from_json(game_to_json(g))), m);
  EXPECT_EQ(game_hash(g), game_hash(game_from_json(game_to_json(g))));
}

TEST(GameIo, StochasticRoundTrip) {
  Gen gen(8);
  const AnyGame g = testing::random_stochastic_game(gen, 2, 3, 2, 0.8);
  const AnyGame back = game_from_json(game_to_json(g));
  EXPECT_EQ(std::get<StochasticGame>(back), std::get<StochasticGame>(g));
}

TEST(GameIo, StochasticShapeErrors) {
  const auto doc = nlohmann::json::parse(R"({"type": "stochastic",
      "R1": [[[0.5]]], "transition": [[[[0.5, 0.5]]]], "gamma": 0.5})");
  EXPECT_ZSG_ERROR(game_from_json(doc), ErrorCode::kDimensionMismatch);
  EXPECT_ZSG_ERROR(game_from_json(nlohmann::json::parse(R"({"type": "x"})")),
                   ErrorCode::kParseError);
}

TEST(GameIo, Builtins) {
  EXPECT_EQ(builtin_matrix_game("mp").payoff(Player::kFirst), kPennies);
  const MatrixGame f = builtin_matrix_game("appF:N=5");
  EXPECT_DOUBLE_EQ(f.payoff(Player::kFirst)(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(f.payoff(Player::kFirst)(0, 1), 0.2);
  EXPECT_EQ(std::get<MatrixGame>(load_game("builtin:rps")),
            builtin_matrix_game("rps"));
  EXPECT_ZSG_ERROR(builtin_matrix_game("nope"), ErrorCode::kParseError);
}

TEST(GameIo, JointPolicyRoundTrip) {
  Gen gen(2);
  const JointPolicy j = testing::random_joint(gen, 3, 2, 4);
  EXPECT_EQ(joint_policy_from_json(joint_policy_to_json(j)), j);
}

}  // namespace
}  // namespace zsg

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

#include <cmath>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "zsg/dynamics_matrix.hpp"
#include "zsg/game_io.hpp"
#include "zsg/metrics.hpp"
#include "zsg/rng.hpp"

namespace zsg {
namespace {

using testing::Gen;

MatrixRunConfig base_config() {
  MatrixRunConfig c;
  c.tau = 0.5;
  c.schedule = StepSchedule::constant(0.5, 0.01);
  c.iterations = 200;
  c.seed = 7;
  return c;
}

TEST(InitMatrixState, UniformZero) {
  const auto s2 = init_matrix_state(builtin_matrix_game("mp"), base_config());
  EXPECT_EQ(s2.learners[0].pi(), Vector::Constant(2, 0.5));
  EXPECT_EQ(s2.learners[1].q(), Vector::Zero(2));
  const auto s3 = init_matrix_state(builtin_matrix_game("rps"), base_config());
  EXPECT_TRUE(s3.learners[1].pi().isApprox(Vector::Constant(3, 1.0 / 3)));
  EXPECT_EQ(s3.k, 0);
  EXPECT_TRUE(s3 == init_matrix_state(builtin_matrix_game("rps"), base_config()));
}

TEST(StepMatrix, OneStepFromInit) {
  const MatrixGame mp = builtin_matrix_game("mp");
  const auto config = base_config();
  auto state = init_matrix_state(mp, config);
  const auto out = step_matrix(state, mp, config);
  // Actions follow from the per-player streams with pi = (0.5, 0.5).
  Rng r1(derive_seed(7, kStreamPlayer1, 0));
  Rng r2(derive_seed(7, kStreamPlayer2, 0));
  const int a1 = r1.uniform() < 0.5 ? 0 : 1;
  const int a2 = r2.uniform() < 0.5 ? 0 : 1;
  EXPECT_EQ(out.actions[0], a1);
  EXPECT_EQ(out.actions[1], a2);
  EXPECT_EQ(state.learners[0].pi(), Vector::Constant(2, 0.5));
  EXPECT_EQ(state.learners[1].pi(), Vector::Constant(2, 0.5));
  for (Player p : kPlayers) {
    const auto& q = state.learners[index(p)].q();
    const int own = out.actions[index(p)];
    const int opp = out.actions[index(opponent(p))];
    EXPECT_EQ(q[own], 0.5 * mp.payoff(p)(own, opp));
    EXPECT_EQ(q[1 - own], 0.0);
  }
  EXPECT_EQ(state.k, 1);
}

TEST(StepMatrix, ZeroPolicyStepAndFullReplacement) {
  const MatrixGame g = builtin_matrix_game("rps");
  auto config = base_config();
  config.schedule = StepSchedule::constant(1.0, 1e-300);
  auto state = init_matrix_state(g, config);
  for (int i = 0; i < 20; ++i) {
    const Vector before = state.learners[0].q();
    const auto out = step_matrix(state, g, config);
    EXPECT_TRUE(state.learners[0].pi().isApprox(Vector::Constant(3, 1.0 / 3), 1e-12));
    for (Player p : kPlayers) {
      EXPECT_EQ(state.learners[index(p)].q()[out.actions[index(p)]],
                out.rewards[index(p)]);
    }
    int changed = 0;
    for (int a = 0; a < 3; ++a) changed += before[a] != state.learners[0].q()[a];
    EXPECT_LE(changed, 1);
  }
}

TEST(StepMatrix, PoliciesStayDistributions) {
  Gen gen(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_matrix_game(gen, 3, 4);
    auto config = base_config();
    config.variant = trial % 2 ? Variant::kExplore : Variant::kPlain;
    config.eps_bar = 0.2;
    config.tau = testing::uniform(gen, 0.05, 1.0);
    config.schedule = StepSchedule::constant(testing::uniform(gen, 0.5, 1.0),
                                             testing::uniform(gen, 0.01, 0.5));
    config.seed = trial;
    auto state = init_matrix_state(g, config);
    for (int k = 0; k < 200; ++k) {
      step_matrix(state, g, config);
      for (Player p : kPlayers) {
        EXPECT_TRUE(is_distribution(state.learners[index(p)].pi(), 1e-12));
      }
    }
  }
}

// Rebuilds one player's (q, pi) path from its own actions and payoffs only.
TEST(StepMatrix, InformationHidingReplay) {
  Gen gen(2);
  const auto g = testing::random_matrix_game(gen, 3, 2);
  auto config = base_config();
  config.variant = Variant::kExplore;
  config.eps_bar = 0.1;
  config.tau = 0.1;
  config.normalize_q_in_softmax = true;
  config.schedule = StepSchedule::diminishing(1.0, 0.5, 2.0);
  auto state = init_matrix_state(g, config);
  MatrixLearner replay[2] = {MatrixLearner(3), MatrixLearner(2)};
  Rng streams[2] = {Rng(derive_seed(config.seed, kStreamPlayer1, 0)),
                    Rng(derive_seed(config.seed, kStreamPlayer2, 0))};
  for (std::int64_t k = 0; k < 500; ++k) {
    const auto out = step_matrix(state, g, config);
    for (int p = 0; p < 2; ++p) {
      replay[p].update_policy(config.softmax_params(), config.schedule.beta_at(k),
                              true);
      EXPECT_EQ(replay[p].act(streams[p]), out.actions[p]);
      replay[p].update_q(out.actions[p], out.rewards[p], config.schedule.alpha_at(k));
      ASSERT_TRUE(replay[p] == state.learners[p]) << "k=" << k;
    }
  }
}

TEST(SmoothedResponse, Normalization) {
  const SoftmaxParams params{0.3, 0.0};
  EXPECT_EQ(smoothed_response(Vector::Zero(2), params, true),
            softmax(Vector::Zero(2), 0.3));
  const Vector q{{0.3, -0.4}};
  EXPECT_TRUE(smoothed_response(q, params, true)
                  .isApprox(softmax(Vector{{0.6, -0.8}}, 0.3), 1e-14));
  EXPECT_EQ(smoothed_response(q, params, false), softmax(q, 0.3));
}

TEST(RunMatrixDynamics, BoundsOnEveryIterate) {
  Gen gen(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int a1 = testing::uniform_int(gen, 2, 4);
    const int a2 = testing::uniform_int(gen, 2, 4);
    const auto g = testing::random_matrix_game(gen, a1, a2);
    auto config = base_config();
    config.variant = trial % 2 ? Variant::kExplore : Variant::kPlain;
    config.tau = testing::uniform(gen, 0.2, 1.0);
    config.eps_bar = testing::uniform(gen, 0.0, 1.0);
    config.schedule = StepSchedule::constant(1.0, testing::uniform(gen, 0.1, 1.0));
    config.normalize_q_in_softmax = trial % 3 == 0;
    config.iterations = 300;
    config.seed = 100 + trial;
    const double bound = exploration_bound(Setting::kMatrix, config.variant,
                                           config.softmax_params(), g.a_max());
    const auto record = run_matrix_dynamics(g, config);
    for (double v : record.metric("min_pi").values) EXPECT_GE(v, bound);
    for (double v : record.metric("q_inf").values) EXPECT_LE(v, 1.0);
  }
}

TEST(RunMatrixDynamics, RecordingGridAndMetrics) {
  const MatrixGame g = perturbed_rps_game(5);
  auto config = base_config();
  config.iterations = 100;
  config.record_stride = 25;
  const auto record = run_matrix_dynamics(g, config);
  const auto& ng = record.metric("ng");
  ASSERT_EQ(ng.index.size(), 4u);
  EXPECT_EQ(ng.index.front().k, 25);
  EXPECT_EQ(ng.index.back().k, 100);
  for (std::size_t i = 1; i < ng.index.size(); ++i) {
    EXPECT_LT(ng.index[i - 1], ng.index[i]);
  }
  EXPECT_NEAR(ng.values.back(), nash_gap_matrix(g, record.final_policy), 1e-15);
  EXPECT_NEAR(record.metric("ngtau").values.back(),
              regularized_nash_gap(g, record.final_policy, config.tau), 1e-15);
  EXPECT_EQ(record.config_echo.at("seed"), 7);
  EXPECT_FALSE(record.warnings.empty());
  EXPECT_FALSE(record.has_metric("v_err"));
  EXPECT_ZSG_ERROR(record.metric("nope"), ErrorCode::kInvalidConfig);
}

TEST(RunMatrixDynamics, Deterministic) {
  const MatrixGame g = builtin_matrix_game("rps");
  auto config = base_config();
  config.iterations = 1000;
  config.record_stride = 10;
  EXPECT_EQ(run_matrix_dynamics(g, config), run_matrix_dynamics(g, config));
  auto other = config;
  other.seed = 8;
  EXPECT_FALSE(run_matrix_dynamics(g, config) == run_matrix_dynamics(g, other));
}

TEST(RunMatrixDynamics, InvalidSchedules) {
  const MatrixGame g = builtin_matrix_game("mp");
  auto config = base_config();
  config.schedule = StepSchedule::constant(0.1, 0.2);
  EXPECT_ZSG_ERROR(run_matrix_dynamics(g, config), ErrorCode::kInvalidConfig);
  config.schedule = StepSchedule::constant(1.5, 0.2);
  EXPECT_ZSG_ERROR(run_matrix_dynamics(g, config), ErrorCode::kInvalidConfig);
  config.schedule = StepSchedule::diminishing(2.0, 1.0, 1.0);
  EXPECT_ZSG_ERROR(run_matrix_dynamics(g, config), ErrorCode::kInvalidConfig);
  config.schedule = StepSchedule::diminishing(2.0, 1.0, 2.0);
  EXPECT_NO_THROW(run_matrix_dynamics(g, config));
  config.record_stride = 0;
  EXPECT_ZSG_ERROR(run_matrix_dynamics(g, config), ErrorCode::kInvalidConfig);
}

TEST(StepsizeConditions, MatrixChecks) {
  MatrixRunConfig c;
  c.tau = 1.0;
  const double ell = exploration_bound(Setting::kMatrix, Variant::kPlain,
                                       {1.0, 0.0}, 2);
  const double cap = std::min(ell * ell * ell / 32.0, ell / 512.0);
  const double beta = 8.0;
  const double alpha = beta / cap;
  c.schedule = StepSchedule::diminishing(alpha, beta, alpha);
  EXPECT_TRUE(check_stepsize_conditions(c, 2).violations.empty());
  c.schedule = StepSchedule::diminishing(alpha, 2.0, alpha);
  EXPECT_FALSE(check_stepsize_conditions(c, 2).violations.empty());
  c.schedule = StepSchedule::constant(0.5, 0.01);
  EXPECT_FALSE(check_stepsize_conditions(c, 2).violations.empty());
  c.tau = 2.0;
  EXPECT_FALSE(check_stepsize_conditions(c, 2).violations.empty());

  MatrixRunConfig e;
  e.variant = Variant::kExplore;
  e.tau = e.eps_bar = 0.1;
  const double ell_e = exploration_bound(Setting::kMatrix, Variant::kExplore,
                                         {0.1, 0.1}, 2);
  e.schedule = StepSchedule::constant(0.5, 0.5 * ell_e / 2.0);
  EXPECT_TRUE(check_stepsize_conditions(e, 2).violations.empty());
  e.eps_bar = 0.2;
  EXPECT_FALSE(check_stepsize_conditions(e, 2).violations.empty());
}

}  // namespace
}  // namespace zsg

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

// Random instances and brute-force oracles shared by the test binaries. The
// oracles deliberately avoid the library's solvers.

#ifndef ZSG_TESTS_TEST_SUPPORT_HPP_
#define ZSG_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "zsg/error.hpp"
#include "zsg/game.hpp"

// Passes when `statement` throws zsg::Error with the given code.
#define EXPECT_ZSG_ERROR(statement, expected)                         \
  do {                                                                \
    try {                                                             \
      statement;                                                      \
      ADD_FAILURE() << "no error thrown by " #statement;              \
    } catch (const ::zsg::Error& e) {                                 \
      EXPECT_EQ(e.code(), expected) << e.what();                      \
    }                                                                 \
  } while (0)

namespace zsg::testing {

using Gen = std::mt19937_64;

inline double uniform(Gen& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline int uniform_int(Gen& gen, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(gen);
}

inline Matrix random_payoff(Gen& gen, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = uniform(gen, -1.0, 1.0);
  }
  return m;
}

// Flat Dirichlet(1) sample.
inline Vector random_distribution(Gen& gen, int n) {
  std::exponential_distribution<double> e(1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = e(gen);
  return v / v.sum();
}

inline PolicyTable random_policy(Gen& gen, int n_states, int n_actions) {
  PolicyTable t(n_states, n_actions);
  for (int s = 0; s < n_states; ++s) {
    t.row(s) = random_distribution(gen, n_actions).transpose();
  }
  return t;
}

inline MatrixGame random_matrix_game(Gen& gen, int a1, int a2) {
  return validate_matrix_game(random_payoff(gen, a1, a2));
}

inline JointPolicy random_joint(Gen& gen, int n_states, int a1, int a2) {
  return {random_policy(gen, n_states, a1), random_policy(gen, n_states, a2)};
}

// Dense Dirichlet transitions, so every chain it induces is ergodic.
inline StochasticGame random_stochastic_game(Gen& gen, int n_states, int a1,
                                             int a2, double gamma) {
  RawStochasticGame raw;
  raw.n_states = n_states;
  raw.n_actions_1 = a1;
  raw.n_actions_2 = a2;
  raw.gamma = gamma;
  for (int s = 0; s < n_states; ++s) raw.r1.push_back(random_payoff(gen, a1, a2));
  for (int i = 0; i < n_states * a1 * a2; ++i) {
    const Vector row = random_distribution(gen, n_states);
    raw.transition.insert(raw.transition.end(), row.data(),
                          row.data() + n_states);
  }
  return validate_stochastic_game(raw);
}

// Lower and upper grid estimates of the value of X (row player maximizes):
// max over grid x of min_j (x^T X)_j, and min over grid y of max_i (X y)_i.
// Supports 2 or 3 actions per side.
inline std::vector<Vector> simplex_grid(int n, int steps) {
  std::vector<Vector> out;
  if (n == 2) {
    for (int i = 0; i <= steps; ++i) {
      const double a = static_cast<double>(i) / steps;
      out.push_back(Vector{{a, 1.0 - a}});
    }
  } else {
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; i + j <= steps; ++j) {
        const double a = static_cast<double>(i) / steps;
        const double b = static_cast<double>(j) / steps;
        out.push_back(Vector{{a, b, std::max(0.0, 1.0 - a - b)}});
      }
    }
  }
  return out;
}

struct GridValue {
  double lower;
  double upper;
};

inline GridValue grid_search_value(const Matrix& x, double resolution) {
  const int steps = static_cast<int>(std::lround(1.0 / resolution));
  GridValue g{-std::numeric_limits<double>::infinity(),
              std::numeric_limits<double>::infinity()};
  for (const auto& p : simplex_grid(static_cast<int>(x.rows()), steps)) {
    g.lower = std::max(g.lower, (p.transpose() * x).minCoeff());
  }
  for (const auto& q : simplex_grid(static_cast<int>(x.cols()), steps)) {
    g.upper = std::min(g.upper, (x * q).maxCoeff());
  }
  return g;
}

// Value of `player` when it plays the deterministic policy `actions` and the
// opponent plays `opp`, from a direct linear solve of (I - gamma P) v = r.
inline Vector evaluate_deterministic(const StochasticGame& g, Player player,
                                     const std::vector<int>& actions,
                                     const PolicyTable& opp) {
  const int n = g.n_states();
  Matrix a = Matrix::Identity(n, n);
  Vector r = Vector::Zero(n);
  for (int s = 0; s < n; ++s) {
    const int own = actions[s];
    for (int b = 0; b < g.n_actions(opponent(player)); ++b) {
      const double w = opp(s, b);
      r[s] += w * g.reward(player, s)(own, b);
      const auto next = g.next_state_dist(player, s, own, b);
      for (int t = 0; t < n; ++t) a(s, t) -= g.gamma() * w * next[t];
    }
  }
  return a.fullPivLu().solve(r);
}

// Same for a joint stochastic policy.
inline Vector evaluate_joint(const StochasticGame& g, Player player,
                             const JointPolicy& joint) {
  const int n = g.n_states();
  Matrix a = Matrix::Identity(n, n);
  Vector r = Vector::Zero(n);
  const auto& own_pi = joint.of(player);
  const auto& opp_pi = joint.of(opponent(player));
  for (int s = 0; s < n; ++s) {
    for (int i = 0; i < g.n_actions(player); ++i) {
      for (int b = 0; b < g.n_actions(opponent(player)); ++b) {
        const double w = own_pi(s, i) * opp_pi(s, b);
        r[s] += w * g.reward(player, s)(i, b);
        const auto next = g.next_state_dist(player, s, i, b);
        for (int t = 0; t < n; ++t) a(s, t) -= g.gamma() * w * next[t];
      }
    }
  }
  return a.fullPivLu().solve(r);
}

// Enumerates every deterministic policy of `player` and keeps the largest
// value under p_o, with its value vector.
struct EnumeratedBest {
  double utility = -std::numeric_limits<double>::infinity();
  Vector value;
};

inline EnumeratedBest enumerate_best_response(const StochasticGame& g,
                                              Player player,
                                              const PolicyTable& opp) {
  const int n = g.n_states();
  const int a = g.n_actions(player);
  std::vector<int> actions(n, 0);
  EnumeratedBest best;
  while (true) {
    const Vector v = evaluate_deterministic(g, player, actions, opp);
    const double u = g.initial_dist().dot(v);
    if (u > best.utility) {
      best.utility = u;
      best.value = v;
    }
    int i = 0;
    while (i < n && ++actions[i] == a) actions[i++] = 0;
    if (i == n) break;
  }
  return best;
}

inline double enumerated_nash_gap(const StochasticGame& g,
                                  const JointPolicy& joint) {
  double gap = 0.0;
  for (Player p : kPlayers) {
    const double best =
        enumerate_best_response(g, p, joint.of(opponent(p))).utility;
    gap += best - g.initial_dist().dot(evaluate_joint(g, p, joint));
  }
  return gap;
}

inline Vector power_iteration(const Matrix& chain, int steps) {
  Vector mu = Vector::Constant(chain.rows(), 1.0 / chain.rows());
  for (int i = 0; i < steps; ++i) mu = (mu.transpose() * chain).transpose();
  return mu;
}

}  // namespace zsg::testing

#endif  // ZSG_TESTS_TEST_SUPPORT_HPP_

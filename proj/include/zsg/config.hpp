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

// Run configurations for the learning dynamics, their validation, the
// closed-form parts of the stepsize conditions, and JSON conversion.

#ifndef ZSG_CONFIG_HPP_
#define ZSG_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "zsg/game.hpp"
#include "zsg/operators.hpp"

namespace zsg {

// alpha_k, beta_k for the q-function and policy updates. The diminishing
// form is alpha / (k + h), beta / (k + h).
struct StepSchedule {
  enum class Kind { kConstant, kDiminishing };
  Kind kind = Kind::kConstant;
  double alpha = 0.5;
  double beta = 0.01;
  double h = 1.0;

  double alpha_at(std::int64_t k) const {
    return kind == Kind::kConstant ? alpha : alpha / (static_cast<double>(k) + h);
  }
  double beta_at(std::int64_t k) const {
    return kind == Kind::kConstant ? beta : beta / (static_cast<double>(k) + h);
  }
  // beta / alpha, the constant ratio c_{alpha,beta}.
  double ratio() const { return beta / alpha; }

  static StepSchedule constant(double alpha, double beta) {
    return {Kind::kConstant, alpha, beta, 1.0};
  }
  static StepSchedule diminishing(double alpha, double beta, double h) {
    return {Kind::kDiminishing, alpha, beta, h};
  }
  bool operator==(const StepSchedule&) const = default;
};

// Throws kInvalidConfig unless alpha_k, beta_k lie in (0, 1] and
// beta_k <= alpha_k for every k. Both sequences are non-increasing, so k = 0
// decides.
void validate_schedule(const StepSchedule& schedule);

struct MatrixRunConfig {
  Variant variant = Variant::kPlain;
  double tau = 1.0;
  double eps_bar = 0.0;
  StepSchedule schedule;
  std::int64_t iterations = 1000;  // K
  std::uint64_t seed = 0;
  std::int64_t record_stride = 1;
  // Feed q / ||q||_2 (q itself when q = 0) to the softmax; q storage is
  // unchanged.
  bool normalize_q_in_softmax = false;

  SoftmaxParams softmax_params() const {
    return {tau, variant == Variant::kExplore ? eps_bar : 0.0};
  }
  bool operator==(const MatrixRunConfig&) const = default;
};

void validate(const MatrixRunConfig& config);

struct VisbrConfig {
  Variant variant = Variant::kPlain;
  double tau = 1.0;
  double eps_bar = 0.0;
  StepSchedule schedule;  // indexed by the inner k, restarted each outer t
  std::int64_t outer_iterations = 10;    // T
  std::int64_t inner_iterations = 1000;  // K
  std::uint64_t seed = 0;
  std::int64_t record_stride = 1000;
  // When set, the second player never learns and plays this stationary
  // policy (rows = states) for the whole run.
  std::optional<PolicyTable> frozen_opponent;
  // Precompute the minimax fixed point and record ||v_t - v*||_inf while
  // |S| * |A1| * |A2| stays within this budget.
  std::int64_t value_error_budget = 4096;
  double gap_tol = 1e-8;  // tolerance for best-response solves in metrics

  SoftmaxParams softmax_params() const {
    return {tau, variant == Variant::kExplore ? eps_bar : 0.0};
  }
  bool operator==(const VisbrConfig& other) const;
};

void validate(const VisbrConfig& config);

// Outcome of checking the stepsize requirements under which the finite-sample
// guarantees hold. Only closed-form requirements can be checked; the ones
// that depend on unobservable problem constants are listed as unchecked.
struct StepsizeReport {
  std::vector<std::string> violations;
  std::vector<std::string> unchecked;

  // violations first, then unchecked items prefixed "not machine-checkable".
  std::vector<std::string> as_warnings() const;
};

StepsizeReport check_stepsize_conditions(const MatrixRunConfig& config,
                                         int a_max);
StepsizeReport check_stepsize_conditions(const VisbrConfig& config, int a_max,
                                         double gamma);

std::string to_string(Variant variant);
Variant variant_from_string(const std::string& name);

void to_json(nlohmann::json& j, const StepSchedule& s);
void from_json(const nlohmann::json& j, StepSchedule& s);
void to_json(nlohmann::json& j, const MatrixRunConfig& c);
void from_json(const nlohmann::json& j, MatrixRunConfig& c);
void to_json(nlohmann::json& j, const VisbrConfig& c);
void from_json(const nlohmann::json& j, VisbrConfig& c);

nlohmann::json table_to_json(const PolicyTable& table);
PolicyTable table_from_json(const nlohmann::json& j);

}  // namespace zsg

#endif  // ZSG_CONFIG_HPP_

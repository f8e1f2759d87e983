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

#include "zsg/config.hpp"

#include <cmath>
#include <sstream>

#include "zsg/error.hpp"

namespace zsg {

using nlohmann::json;

void validate_schedule(const StepSchedule& s) {
  if (!std::isfinite(s.alpha) || !std::isfinite(s.beta) ||
      !std::isfinite(s.h)) {
    throw Error(ErrorCode::kInvalidConfig, "stepsizes must be finite");
  }
  if (s.kind == StepSchedule::Kind::kDiminishing && !(s.h > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                "diminishing schedule needs h > 0 so that alpha_0 is finite");
  }
  const double a0 = s.alpha_at(0);
  const double b0 = s.beta_at(0);
  if (!(a0 > 0.0 && a0 <= 1.0) || !(b0 > 0.0 && b0 <= 1.0)) {
    std::ostringstream os;
    os << "alpha_0 = " << a0 << " and beta_0 = " << b0
       << " must both lie in (0, 1]";
    throw Error(ErrorCode::kInvalidConfig, os.str());
  }
  if (s.beta > s.alpha) {
    throw Error(ErrorCode::kInvalidConfig, "need beta_k <= alpha_k");
  }
}

namespace {

void validate_common(double tau, double eps_bar, const StepSchedule& schedule,
                     std::int64_t stride) {
  check_softmax_params({tau, eps_bar});
  validate_schedule(schedule);
  if (stride < 1) {
    throw Error(ErrorCode::kInvalidConfig, "record_stride must be >= 1");
  }
}

}  // namespace

void validate(const MatrixRunConfig& c) {
  validate_common(c.tau, c.eps_bar, c.schedule, c.record_stride);
  if (c.iterations < 1) {
    throw Error(ErrorCode::kInvalidConfig, "iterations must be >= 1");
  }
}

void validate(const VisbrConfig& c) {
  validate_common(c.tau, c.eps_bar, c.schedule, c.record_stride);
  if (c.outer_iterations < 1 || c.inner_iterations < 1) {
    throw Error(ErrorCode::kInvalidConfig, "need T >= 1 and K >= 1");
  }
  if (!(c.gap_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "gap_tol must be positive");
  }
}

bool VisbrConfig::operator==(const VisbrConfig& o) const {
  const bool frozen_equal =
      frozen_opponent.has_value() == o.frozen_opponent.has_value() &&
      (!frozen_opponent || same_table(*frozen_opponent, *o.frozen_opponent));
  return variant == o.variant && tau == o.tau && eps_bar == o.eps_bar &&
         schedule == o.schedule && outer_iterations == o.outer_iterations &&
         inner_iterations == o.inner_iterations && seed == o.seed &&
         record_stride == o.record_stride && frozen_equal &&
         value_error_budget == o.value_error_budget && gap_tol == o.gap_tol;
}

std::vector<std::string> StepsizeReport::as_warnings() const {
  std::vector<std::string> out = violations;
  for (const auto& u : unchecked) out.push_back("not machine-checkable: " + u);
  return out;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

StepsizeReport check_stepsize_conditions(const MatrixRunConfig& c, int a_max) {
  StepsizeReport r;
  const double a = static_cast<double>(a_max);
  const double ratio = c.schedule.ratio();
  const double alpha0 = c.schedule.alpha_at(0);
  const double beta0 = c.schedule.beta_at(0);
  const bool diminishing = c.schedule.kind == StepSchedule::Kind::kDiminishing;
  if (c.variant == Variant::kPlain) {
    const double ell = exploration_bound(Setting::kMatrix, Variant::kPlain,
                                         {c.tau, 0.0}, a_max);
    if (c.tau > 1.0) r.violations.push_back("tau = " + fmt(c.tau) + " > 1");
    if (!(alpha0 < 2.0 / ell)) {
      r.violations.push_back("alpha_0 = " + fmt(alpha0) +
                             " is not below 2 / ell_tau = " + fmt(2.0 / ell));
    }
    const double beta_cap = c.tau / (128.0 * a * a);
    if (!(beta0 < beta_cap)) {
      r.violations.push_back("beta_0 = " + fmt(beta0) +
                             " is not below tau / (128 A_max^2) = " +
                             fmt(beta_cap));
    }
    const double ratio_cap =
        std::min(c.tau * ell * ell * ell / 32.0,
                 ell * c.tau * c.tau * c.tau / (128.0 * a * a));
    if (ratio > ratio_cap) {
      r.violations.push_back("beta / alpha = " + fmt(ratio) +
                             " exceeds its cap " + fmt(ratio_cap));
    }
    if (diminishing && !(c.schedule.beta > 4.0)) {
      r.violations.push_back("diminishing schedule needs beta > 4, got " +
                             fmt(c.schedule.beta));
    }
  } else {
    const double ell = exploration_bound(Setting::kMatrix, Variant::kExplore,
                                         c.softmax_params(), a_max);
    if (diminishing) {
      r.unchecked.push_back(
          "guarantees for the exploring variant are stated for constant "
          "stepsizes only");
    }
    if (!(c.schedule.alpha < 1.0 / ell)) {
      r.violations.push_back("alpha = " + fmt(c.schedule.alpha) +
                             " is not below 1 / ell_{tau,eps} = " +
                             fmt(1.0 / ell));
    }
    if (!(c.schedule.beta < 1.0)) {
      r.violations.push_back("beta must be below 1");
    }
    if (ratio > ell / 2.0) {
      r.violations.push_back("beta / alpha = " + fmt(ratio) +
                             " exceeds ell_{tau,eps} / 2 = " + fmt(ell / 2.0));
    }
    if (c.eps_bar != c.tau) {
      r.violations.push_back("eps_bar = " + fmt(c.eps_bar) +
                             " differs from tau = " + fmt(c.tau));
    }
  }
  return r;
}

StepsizeReport check_stepsize_conditions(const VisbrConfig& c, int a_max,
                                         double gamma) {
  StepsizeReport r;
  const double tau_cap = 1.0 / (1.0 - gamma);
  if (c.tau > tau_cap) {
    r.violations.push_back("tau = " + fmt(c.tau) +
                           " exceeds 1 / (1 - gamma) = " + fmt(tau_cap));
  }
  const bool diminishing = c.schedule.kind == StepSchedule::Kind::kDiminishing;
  if (c.variant == Variant::kPlain) {
    if (diminishing && c.schedule.beta != 4.0) {
      r.violations.push_back("diminishing schedule expects beta = 4, got " +
                             fmt(c.schedule.beta));
    }
    if (!diminishing && !(c.schedule.beta < 1.0)) {
      r.violations.push_back("beta must be below 1");
    }
    r.unchecked.push_back(
        "the cap on beta / alpha and the bound on alpha depend on mu_min and "
        "L_p");
  } else {
    if (c.eps_bar != c.tau) {
      r.violations.push_back("eps_bar = " + fmt(c.eps_bar) +
                             " differs from tau = " + fmt(c.tau));
    }
    if (diminishing) {
      r.unchecked.push_back(
          "guarantees for the exploring variant are stated for constant "
          "stepsizes only");
    } else if (!(c.schedule.beta < 1.0)) {
      r.violations.push_back("beta must be below 1");
    }
    r.unchecked.push_back(
        "alpha < A_max / (mu_min tau) and beta / alpha <= mu_min tau / "
        "(2 A_max) depend on mu_min");
  }
  (void)a_max;
  return r;
}

std::string to_string(Variant v) {
  return v == Variant::kPlain ? "plain" : "explore";
}

Variant variant_from_string(const std::string& name) {
  if (name == "plain") return Variant::kPlain;
  if (name == "explore") return Variant::kExplore;
  throw Error(ErrorCode::kParseError, "unknown variant '" + name + "'");
}

void to_json(json& j, const StepSchedule& s) {
  if (s.kind == StepSchedule::Kind::kConstant) {
    j = json{{"kind", "constant"}, {"alpha", s.alpha}, {"beta", s.beta}};
  } else {
    j = json{{"kind", "diminishing"},
             {"alpha", s.alpha},
             {"beta", s.beta},
             {"h", s.h}};
  }
}

void from_json(const json& j, StepSchedule& s) {
  const std::string kind = j.value("kind", "constant");
  if (kind == "constant") {
    s = StepSchedule::constant(j.at("alpha").get<double>(),
                               j.at("beta").get<double>());
  } else if (kind == "diminishing") {
    s = StepSchedule::diminishing(j.at("alpha").get<double>(),
                                  j.at("beta").get<double>(),
                                  j.at("h").get<double>());
  } else {
    throw Error(ErrorCode::kParseError, "unknown stepsize kind '" + kind + "'");
  }
}

void to_json(json& j, const MatrixRunConfig& c) {
  j = json{{"variant", to_string(c.variant)},
           {"tau", c.tau},
           {"eps_bar", c.eps_bar},
           {"stepsize", c.schedule},
           {"iterations", c.iterations},
           {"seed", c.seed},
           {"record_stride", c.record_stride},
           {"normalize_q_in_softmax", c.normalize_q_in_softmax}};
}

void from_json(const json& j, MatrixRunConfig& c) {
  c = MatrixRunConfig{};
  c.variant = variant_from_string(j.value("variant", "plain"));
  c.tau = j.value("tau", c.tau);
  c.eps_bar = j.value("eps_bar", c.eps_bar);
  if (j.contains("stepsize")) c.schedule = j.at("stepsize").get<StepSchedule>();
  c.iterations = j.value("iterations", c.iterations);
  c.seed = j.value("seed", c.seed);
  c.record_stride = j.value("record_stride", c.record_stride);
  c.normalize_q_in_softmax =
      j.value("normalize_q_in_softmax", c.normalize_q_in_softmax);
}

json table_to_json(const PolicyTable& t) {
  json rows = json::array();
  for (Eigen::Index s = 0; s < t.rows(); ++s) {
    json row = json::array();
    for (Eigen::Index a = 0; a < t.cols(); ++a) row.push_back(t(s, a));
    rows.push_back(std::move(row));
  }
  return rows;
}

PolicyTable table_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::kParseError, "table must be a non-empty 2-D array");
  }
  // A flat vector is accepted as a single-row table.
  if (!j.front().is_array()) {
    PolicyTable t(1, static_cast<Eigen::Index>(j.size()));
    for (std::size_t a = 0; a < j.size(); ++a) t(0, a) = j[a].get<double>();
    return t;
  }
  const auto cols = j.front().size();
  PolicyTable t(static_cast<Eigen::Index>(j.size()),
                static_cast<Eigen::Index>(cols));
  for (std::size_t s = 0; s < j.size(); ++s) {
    if (!j[s].is_array() || j[s].size() != cols) {
      throw Error(ErrorCode::kParseError, "table rows have unequal lengths");
    }
    for (std::size_t a = 0; a < cols; ++a) t(s, a) = j[s][a].get<double>();
  }
  return t;
}

void to_json(json& j, const VisbrConfig& c) {
  j = json{{"variant", to_string(c.variant)},
           {"tau", c.tau},
           {"eps_bar", c.eps_bar},
           {"stepsize", c.schedule},
           {"outer_iterations", c.outer_iterations},
           {"inner_iterations", c.inner_iterations},
           {"seed", c.seed},
           {"record_stride", c.record_stride},
           {"value_error_budget", c.value_error_budget},
           {"gap_tol", c.gap_tol}};
  if (c.frozen_opponent) j["frozen_opponent"] = table_to_json(*c.frozen_opponent);
}

void from_json(const json& j, VisbrConfig& c) {
  c = VisbrConfig{};
  c.variant = variant_from_string(j.value("variant", "plain"));
  c.tau = j.value("tau", c.tau);
  c.eps_bar = j.value("eps_bar", c.eps_bar);
  if (j.contains("stepsize")) c.schedule = j.at("stepsize").get<StepSchedule>();
  c.outer_iterations = j.value("outer_iterations", c.outer_iterations);
  c.inner_iterations = j.value("inner_iterations", c.inner_iterations);
  c.seed = j.value("seed", c.seed);
  c.record_stride = j.value("record_stride", c.record_stride);
  c.value_error_budget = j.value("value_error_budget", c.value_error_budget);
  c.gap_tol = j.value("gap_tol", c.gap_tol);
  if (j.contains("frozen_opponent")) {
    c.frozen_opponent = table_from_json(j.at("frozen_opponent"));
  }
}

}  // namespace zsg

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

#include "zsg/game_io.hpp"

#include <fstream>
#include <sstream>

#include "zsg/config.hpp"
#include "zsg/error.hpp"

namespace zsg {

using nlohmann::json;

namespace {

Matrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw Error(ErrorCode::kParseError,
                std::string(what) + " must be a non-empty nested array");
  }
  const auto cols = j.front().size();
  Matrix m(static_cast<Eigen::Index>(j.size()),
           static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw Error(ErrorCode::kDimensionMismatch,
                  std::string(what) + " is not rectangular");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Matrix> matrices_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::kParseError,
                std::string(what) + " must list one matrix per state");
  }
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m, what));
  return out;
}

StochasticGame stochastic_from_json(const json& doc) {
  RawStochasticGame raw;
  raw.r1 = matrices_from_json(doc.at("R1"), "R1");
  raw.n_states = static_cast<int>(raw.r1.size());
  raw.n_actions_1 = static_cast<int>(raw.r1.front().rows());
  raw.n_actions_2 = static_cast<int>(raw.r1.front().cols());
  if (doc.contains("R2")) raw.r2 = matrices_from_json(doc.at("R2"), "R2");
  if (!doc.contains("gamma")) {
    throw Error(ErrorCode::kParseError, "stochastic game needs gamma");
  }
  raw.gamma = doc.at("gamma").get<double>();
  const json& tr = doc.at("transition");
  const auto n_s = static_cast<std::size_t>(raw.n_states);
  const auto n1 = static_cast<std::size_t>(raw.n_actions_1);
  const auto n2 = static_cast<std::size_t>(raw.n_actions_2);
  auto bad_shape = [] {
    return Error(ErrorCode::kDimensionMismatch,
                 "transition must have shape [S][A1][A2][S]");
  };
  if (!tr.is_array() || tr.size() != n_s) throw bad_shape();
  for (const auto& per_state : tr) {
    if (!per_state.is_array() || per_state.size() != n1) throw bad_shape();
    for (const auto& per_a1 : per_state) {
      if (!per_a1.is_array() || per_a1.size() != n2) throw bad_shape();
      for (const auto& row : per_a1) {
        if (!row.is_array() || row.size() != n_s) throw bad_shape();
        for (const auto& p : row) raw.transition.push_back(p.get<double>());
      }
    }
  }
  if (doc.contains("initial_dist")) {
    const auto& d = doc.at("initial_dist");
    Vector v(static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) v[i] = d[i].get<double>();
    raw.initial_dist = std::move(v);
  }
  return validate_stochastic_game(raw);
}

}  // namespace

AnyGame game_from_json(const json& doc) {
  try {
    const std::string type = doc.value("type", "matrix");
    if (type == "matrix") {
      std::optional<Matrix> r2;
      if (doc.contains("R2")) r2 = matrix_from_json(doc.at("R2"), "R2");
      return validate_matrix_game(matrix_from_json(doc.at("R1"), "R1"), r2);
    }
    if (type == "stochastic") return stochastic_from_json(doc);
    throw Error(ErrorCode::kParseError, "unknown game type '" + type + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

json game_to_json(const MatrixGame& game) {
  return json{{"type", "matrix"},
              {"R1", matrix_to_json(game.payoff(Player::kFirst))},
              {"R2", matrix_to_json(game.payoff(Player::kSecond))}};
}

json game_to_json(const StochasticGame& game) {
  json doc{{"type", "stochastic"}, {"gamma", game.gamma()}};
  json r1 = json::array(), r2 = json::array(), tr = json::array();
  for (int s = 0; s < game.n_states(); ++s) {
    r1.push_back(matrix_to_json(game.reward(Player::kFirst, s)));
    r2.push_back(matrix_to_json(game.reward(Player::kSecond, s)));
    json per_state = json::array();
    for (int a1 = 0; a1 < game.n_actions(Player::kFirst); ++a1) {
      json per_a1 = json::array();
      for (int a2 = 0; a2 < game.n_actions(Player::kSecond); ++a2) {
        const auto next = game.next_state_dist(s, a1, a2);
        per_a1.push_back(json(std::vector<double>(next.begin(), next.end())));
      }
      per_state.push_back(std::move(per_a1));
    }
    tr.push_back(std::move(per_state));
  }
  doc["R1"] = std::move(r1);
  doc["R2"] = std::move(r2);
  doc["transition"] = std::move(tr);
  if (!game.initial_dist_defaulted()) {
    const Vector& d = game.initial_dist();
    doc["initial_dist"] = std::vector<double>(d.data(), d.data() + d.size());
  }
  return doc;
}

json game_to_json(const AnyGame& game) {
  return std::visit([](const auto& g) { return game_to_json(g); }, game);
}

MatrixGame perturbed_rps_game(int n) {
  if (n <= 0) {
    throw Error(ErrorCode::kInvalidConfig, "appF needs a positive N");
  }
  Matrix r1(3, 3);
  r1 << n, 1, -1,
        -1, 0, 1,
        1, -1, 0;
  r1 /= std::max(1.0, static_cast<double>(n));
  return validate_matrix_game(r1);
}

MatrixGame builtin_matrix_game(const std::string& name) {
  if (name == "mp") {
    Matrix r1(2, 2);
    r1 << 1, -1,
          -1, 1;
    return validate_matrix_game(r1);
  }
  if (name == "rps") {
    Matrix r1(3, 3);
    r1 << 0, -1, 1,
          1, 0, -1,
          -1, 1, 0;
    return validate_matrix_game(r1);
  }
  const std::string prefix = "appF:N=";
  if (name.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    const std::string digits = name.substr(prefix.size());
    int n = 0;
    try {
      n = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != digits.size()) {
      throw Error(ErrorCode::kParseError, "bad builtin game '" + name + "'");
    }
    return perturbed_rps_game(n);
  }
  throw Error(ErrorCode::kParseError, "unknown builtin game '" + name + "'");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

AnyGame load_game(const std::string& source) {
  const std::string builtin = "builtin:";
  if (source.rfind(builtin, 0) == 0) {
    return builtin_matrix_game(source.substr(builtin.size()));
  }
  return game_from_json(read_json_file(source));
}

std::uint64_t game_hash(const AnyGame& game) {
  const std::string text = game_to_json(game).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

JointPolicy joint_policy_from_json(const json& doc) {
  try {
    return {table_from_json(doc.at("pi1")), table_from_json(doc.at("pi2"))};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

json joint_policy_to_json(const JointPolicy& joint) {
  return json{{"pi1", table_to_json(joint.pi1)},
              {"pi2", table_to_json(joint.pi2)}};
}

}  // namespace zsg

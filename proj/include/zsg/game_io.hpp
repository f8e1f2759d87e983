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

// Game documents.
//
// A game file is a JSON object:
//   {"type": "matrix", "R1": [[...], ...], "R2": [[...], ...]}
//   {"type": "stochastic", "R1": [state][a1][a2], "R2": [state][a2][a1],
//    "transition": [state][a1][a2][next_state], "gamma": g,
//    "initial_dist": [...]}
// R2 is optional (defaults to the zero-sum counterpart of R1), as is
// initial_dist (defaults to uniform).
//
// Built-in sources: "builtin:mp" (matching pennies), "builtin:rps"
// (rock-paper-scissors) and "builtin:appF:N=<int>", the 3x3 game
//   [[N, 1, -1], [-1, 0, 1], [1, -1, 0]]
// divided by max(N, 1) so that payoffs stay in [-1, 1].

#ifndef ZSG_GAME_IO_HPP_
#define ZSG_GAME_IO_HPP_

#include <cstdint>
#include <string>
#include <variant>

#include "json.hpp"
#include "zsg/game.hpp"

namespace zsg {

using AnyGame = std::variant<MatrixGame, StochasticGame>;

AnyGame game_from_json(const nlohmann::json& doc);
nlohmann::json game_to_json(const MatrixGame& game);
nlohmann::json game_to_json(const StochasticGame& game);
nlohmann::json game_to_json(const AnyGame& game);

// "builtin:..." or a path to a game file.
AnyGame load_game(const std::string& source);

MatrixGame builtin_matrix_game(const std::string& name);
MatrixGame perturbed_rps_game(int n);

// FNV-1a 64 of the canonical JSON serialization.
std::uint64_t game_hash(const AnyGame& game);

JointPolicy joint_policy_from_json(const nlohmann::json& doc);
nlohmann::json joint_policy_to_json(const JointPolicy& joint);

nlohmann::json read_json_file(const std::string& path);

}  // namespace zsg

#endif  // ZSG_GAME_IO_HPP_

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

#ifndef ZSG_ERROR_HPP_
#define ZSG_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace zsg {

enum class ErrorCode {
  kDimensionMismatch,
  kPayoffOutOfRange,
  kNotZeroSum,
  kBadTransitionRow,
  kBadDiscount,
  kBadDistribution,
  kNonFiniteInput,
  kNotADistribution,
  kMissingGamma,
  kNotErgodic,
  kNoConvergence,
  kInvalidConfig,
  kGridMismatch,
  kNonPositiveValues,
  kOutputExists,
  kParseError,
};

std::string_view error_code_name(ErrorCode code);

// All library failures surface as this exception; `code()` identifies the
// failure class so callers and tests can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zsg

#endif  // ZSG_ERROR_HPP_

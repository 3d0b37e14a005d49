// Copyright 2026 The UDuo Authors
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

#ifndef UDUO_ERROR_H_
#define UDUO_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace uduo {

enum class ErrorCode {
  // core-model
  kNegativeCost,
  kDimensionMismatch,
  kNegativeBudget,
  kInvalidNullTreatment,
  kNonFinite,
  kInvalidStep,
  // dual-solver
  kNoBracket,
  kLengthMismatch,
  // oracle
  kTooLarge,
  // pacing
  kTooShort,
  kInvalidHistory,
  kInvalidSlot,
  // forecasting
  kInsufficientHistory,
  kInvalidParameter,
  kShapeMismatch,
  kServiceUnavailable,
  kProtocolError,
  // simulator
  kInvalidRegimeParams,
  kInvalidPolicy,
  // io / config
  kIo,
  kParse,
  kConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure in the library surfaces as an Error carrying a code, so that
// callers (notably the CLI) can map it onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uduo

#endif  // UDUO_ERROR_H_

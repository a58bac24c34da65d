// Copyright 2026 The HNN Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HNN_ERROR_HPP_
#define HNN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace hnn {

// Error categories. The C API and the CLI map these onto process exit codes,
// so new codes must be added to ErrorClass() as well.
enum class ErrorCode {
  kInvalidArgument,
  kDomainMismatch,
  kParamsMismatch,
  kLevelMismatch,
  kScaleMismatch,
  kLevelExhausted,
  kBudgetExceeded,
  kInsecureParams,
  kNoSecureParams,
  kFormat,
  kChecksum,
  kIo,
  kNumerical,
};

enum class ErrorClass { kUsage, kFormat, kCryptoState, kIo, kInternal };

constexpr ErrorClass ClassOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDomainMismatch:
    case ErrorCode::kInsecureParams:
    case ErrorCode::kNoSecureParams:
      return ErrorClass::kUsage;
    case ErrorCode::kFormat:
    case ErrorCode::kChecksum:
    case ErrorCode::kParamsMismatch:
      return ErrorClass::kFormat;
    case ErrorCode::kLevelMismatch:
    case ErrorCode::kScaleMismatch:
    case ErrorCode::kLevelExhausted:
    case ErrorCode::kBudgetExceeded:
      return ErrorClass::kCryptoState;
    case ErrorCode::kIo:
      return ErrorClass::kIo;
    case ErrorCode::kNumerical:
      return ErrorClass::kInternal;
  }
  return ErrorClass::kInternal;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void Require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) Fail(code, what);
}

}  // namespace hnn

#endif  // HNN_ERROR_HPP_

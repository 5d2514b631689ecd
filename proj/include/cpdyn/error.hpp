// Copyright 2026 The cpdyn authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace cpdyn {

enum class ErrorCode {
  kDimensionMismatch,
  kNotHermitian,
  kNotTracePreserving,
  kNotUnitary,
  kNotMixedUnitary,
  kWeightsInvalid,
  kIndexOutOfRange,
  kNotFaithful,
  kBarycenterMismatch,
  kNotDiagonalSupported,
  kZeroDenominator,
  kInconsistent,
  kNoConvergence,
  kSpectralFailure,
  kParseError,
  kValidationError,
  kIoError,
};

// Failure class; doubles as the CLI exit code and the C API status value.
enum class ErrorClass { kValidation = 1, kNumeric = 2, kIo = 3 };

inline ErrorClass error_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoConvergence:
    case ErrorCode::kSpectralFailure:
    case ErrorCode::kZeroDenominator:
    case ErrorCode::kInconsistent:
      return ErrorClass::kNumeric;
    case ErrorCode::kIoError:
      return ErrorClass::kIo;
    default:
      return ErrorClass::kValidation;
  }
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotTracePreserving: return "NotTracePreserving";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kNotMixedUnitary: return "NotMixedUnitary";
    case ErrorCode::kWeightsInvalid: return "WeightsInvalid";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNotFaithful: return "NotFaithful";
    case ErrorCode::kBarycenterMismatch: return "BarycenterMismatch";
    case ErrorCode::kNotDiagonalSupported: return "NotDiagonalSupported";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kInconsistent: return "Inconsistent";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kSpectralFailure: return "SpectralFailure";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorClass cls() const noexcept { return error_class(code_); }
  const char* code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cpdyn

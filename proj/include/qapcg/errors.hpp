// Copyright 2026 The qapcg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qapcg {

enum class ErrorCode {
  kZeroInverse,
  kInvalidModulus,
  kIndexOutOfRange,
  kSpecMismatch,
  kNoRootOfUnity,
  kNotASubgroup,
  kInvalidPoint,
  kLengthMismatch,
  kInvalidSpec,
  kParamError,
  kSeedMismatch,
  kBatchMismatch,
  kInconsistentProgramming,
  kRangeError,
  kInsufficientTriples,
  kMaskMismatch,
  kMalformedCircuit,
  kFormatError,
};

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroInverse: return "ZeroInverse";
    case ErrorCode::kInvalidModulus: return "InvalidModulus";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kSpecMismatch: return "SpecMismatch";
    case ErrorCode::kNoRootOfUnity: return "NoRootOfUnity";
    case ErrorCode::kNotASubgroup: return "NotASubgroup";
    case ErrorCode::kInvalidPoint: return "InvalidPoint";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kParamError: return "ParamError";
    case ErrorCode::kSeedMismatch: return "SeedMismatch";
    case ErrorCode::kBatchMismatch: return "BatchMismatch";
    case ErrorCode::kInconsistentProgramming: return "InconsistentProgramming";
    case ErrorCode::kRangeError: return "RangeError";
    case ErrorCode::kInsufficientTriples: return "InsufficientTriples";
    case ErrorCode::kMaskMismatch: return "MaskMismatch";
    case ErrorCode::kMalformedCircuit: return "MalformedCircuit";
    case ErrorCode::kFormatError: return "FormatError";
  }
  return "Unknown";
}

// All library failures are reported through this exception type; `code()`
// identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qapcg

// Copyright 2026 The clsh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "clsh/error.hpp"

namespace clsh {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kBadMagic: return "bad magic";
    case ErrorCode::kTruncated: return "truncated input";
    case ErrorCode::kZeroDims: return "zero dimensions";
    case ErrorCode::kSizeOverflow: return "declared size overflows";
    case ErrorCode::kUnsupportedVersion: return "unsupported version";
    case ErrorCode::kCorrupt: return "corrupt data";
    case ErrorCode::kRadiusExceeded: return "radius exceeds built radius";
    case ErrorCode::kTooLargeToVerify: return "too large to verify";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kOverflow: return "arithmetic overflow";
    case ErrorCode::kUnsupported: return "unsupported operation";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace clsh

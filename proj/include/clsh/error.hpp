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

#pragma once

#include <stdexcept>
#include <string>

namespace clsh {

/// Failure categories. The numeric values are shared with the C API status
/// codes in clsh.h and must stay stable.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kDimensionMismatch = 2,
  kIo = 3,
  kBadMagic = 4,
  kTruncated = 5,
  kZeroDims = 6,
  kSizeOverflow = 7,
  kUnsupportedVersion = 8,
  kCorrupt = 9,
  kRadiusExceeded = 10,
  kTooLargeToVerify = 11,
  kInfeasible = 12,
  kOverflow = 13,
  kUnsupported = 14,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace clsh

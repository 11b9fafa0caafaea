/* Copyright 2026 The svac Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace svac {

enum class ErrorCode {
  kInvalidArgument,
  kMissingPath,
  kMalformedHeader,
  kDimensionMismatch,
  kTruncatedData,
  kIoFailure,
  kInvalidClipLength,
  kLayoutMismatch,
  kIndexOutOfRange,
  kNonDivisibleDimensions,
  kWindowLargerThanGrid,
  kScoreCountMismatch,
  kSchemaViolation,
  kVersionMismatch,
  kNoComposite,
  kEmptyInput,
};

std::string_view error_code_name(ErrorCode code);

// what() is "<CodeName>: <detail>" so callers can prefix it with "error: ".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace svac

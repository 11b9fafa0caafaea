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

#include "svac/error.hpp"

namespace svac {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMissingPath: return "MissingPath";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTruncatedData: return "TruncatedData";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kInvalidClipLength: return "InvalidClipLength";
    case ErrorCode::kLayoutMismatch: return "LayoutMismatch";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNonDivisibleDimensions: return "NonDivisibleDimensions";
    case ErrorCode::kWindowLargerThanGrid: return "WindowLargerThanGrid";
    case ErrorCode::kScoreCountMismatch: return "ScoreCountMismatch";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kNoComposite: return "NoComposite";
    case ErrorCode::kEmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code) {}

}  // namespace svac

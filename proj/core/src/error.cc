// Copyright 2026 The milpsim Authors
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
#include "milpsim/error.h"

namespace milpsim {

std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidInstance: return "InvalidInstance";
    case ErrorCode::kUnknownSection: return "UnknownSection";
    case ErrorCode::kDuplicateRow: return "DuplicateRow";
    case ErrorCode::kUnknownRowInColumns: return "UnknownRowInColumns";
    case ErrorCode::kMalformedNumeric: return "MalformedNumeric";
    case ErrorCode::kUnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::kUnsupportedDims: return "UnsupportedDims";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyConstraints: return "EmptyConstraints";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kDegenerateBatch: return "DegenerateBatch";
    case ErrorCode::kNoValidTriplet: return "NoValidTriplet";
    case ErrorCode::kEmbeddingMismatch: return "EmbeddingMismatch";
    case ErrorCode::kEmptyStore: return "EmptyStore";
    case ErrorCode::kNoFiniteTrials: return "NoFiniteTrials";
    case ErrorCode::kConstantInput: return "ConstantInput";
    case ErrorCode::kInsufficientPairs: return "InsufficientPairs";
    case ErrorCode::kMissingArtifacts: return "MissingArtifacts";
    case ErrorCode::kMalformedFile: return "MalformedFile";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorName(code)) + ": " + message),
      code_(code) {}

}  // namespace milpsim

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
#ifndef MILPSIM_ERROR_H_
#define MILPSIM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace milpsim {

// Every failure raised by the library carries one of these codes. The CLI
// prints ErrorName(code) and exits nonzero.
enum class ErrorCode {
  kInvalidArgument,
  kInvalidInstance,
  kUnknownSection,
  kDuplicateRow,
  kUnknownRowInColumns,
  kMalformedNumeric,
  kUnsupportedFeature,
  kUnsupportedDims,
  kDimensionMismatch,
  kEmptyConstraints,
  kShapeMismatch,
  kNonFiniteLoss,
  kDegenerateBatch,
  kNoValidTriplet,
  kEmbeddingMismatch,
  kEmptyStore,
  kNoFiniteTrials,
  kConstantInput,
  kInsufficientPairs,
  kMissingArtifacts,
  kMalformedFile,
  kIoError,
};

std::string_view ErrorName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace milpsim

#endif  // MILPSIM_ERROR_H_

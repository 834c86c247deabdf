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

#ifndef MILPSIM_CHECKPOINT_H_
#define MILPSIM_CHECKPOINT_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "milpsim/encoder.h"

namespace milpsim {

// Little-endian layout:
//   8 bytes  magic "MSIMENC\0"
//   u32      format version (1)
//   u32      hidden width H
//   u32      variable feature width (5)
//   u32      constraint feature width (4)
//   u32      layer count (4)
//   u32      embedding width (256)
//   u64      parameter count
//   f64[]    parameters in EncoderModel order, row-major
std::string SerializeModel(const EncoderModel& model);

// Throws Error(kMalformedFile) on a bad magic, version, shape or length.
EncoderModel DeserializeModel(std::string_view bytes);

void SaveModel(const EncoderModel& model, const std::filesystem::path& path);
EncoderModel LoadModel(const std::filesystem::path& path);

}  // namespace milpsim

#endif  // MILPSIM_CHECKPOINT_H_

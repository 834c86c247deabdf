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

#include "milpsim/checkpoint.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "milpsim/error.h"

namespace milpsim {
namespace {

constexpr char kMagic[8] = {'M', 'S', 'I', 'M', 'E', 'N', 'C', '\0'};
constexpr uint32_t kVersion = 1;
constexpr size_t kHeaderSize = 8 + 6 * 4 + 8;

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

template <typename T>
void Put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T Get(std::string_view bytes, size_t& pos) {
  T value;
  std::memcpy(&value, bytes.data() + pos, sizeof(T));
  pos += sizeof(T);
  return value;
}

void Expect(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kMalformedFile, "checkpoint: " + what);
}

}  // namespace

std::string SerializeModel(const EncoderModel& model) {
  std::string out(kMagic, sizeof(kMagic));
  Put<uint32_t>(out, kVersion);
  Put<uint32_t>(out, model.hidden());
  Put<uint32_t>(out, kVarFeatureWidth);
  Put<uint32_t>(out, kConsFeatureWidth);
  Put<uint32_t>(out, kNumLayers);
  Put<uint32_t>(out, kEmbeddingWidth);
  Put<uint64_t>(out, model.params().size());
  for (double v : model.params()) Put<double>(out, v);
  return out;
}

EncoderModel DeserializeModel(std::string_view bytes) {
  Expect(bytes.size() >= kHeaderSize, "truncated header");
  Expect(std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) == 0, "bad magic");
  size_t pos = sizeof(kMagic);
  Expect(Get<uint32_t>(bytes, pos) == kVersion, "unsupported version");
  const uint32_t hidden = Get<uint32_t>(bytes, pos);
  Expect(Get<uint32_t>(bytes, pos) == kVarFeatureWidth, "variable feature width");
  Expect(Get<uint32_t>(bytes, pos) == kConsFeatureWidth, "constraint feature width");
  Expect(Get<uint32_t>(bytes, pos) == kNumLayers, "layer count");
  Expect(Get<uint32_t>(bytes, pos) == kEmbeddingWidth, "embedding width");
  const uint64_t count = Get<uint64_t>(bytes, pos);
  Expect(hidden > 0 && hidden <= 4096 &&
             count == static_cast<uint64_t>(EncoderModel::ParameterCount(hidden)),
         "parameter count does not match shapes");
  Expect(bytes.size() == kHeaderSize + count * sizeof(double), "payload length");
  std::vector<double> params(count);
  for (double& v : params) v = Get<double>(bytes, pos);
  return EncoderModel(static_cast<int>(hidden), std::move(params));
}

void SaveModel(const EncoderModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  const std::string bytes = SerializeModel(model);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

EncoderModel LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingArtifacts, "cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return DeserializeModel(bytes);
}

}  // namespace milpsim

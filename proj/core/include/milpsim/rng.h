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
#ifndef MILPSIM_RNG_H_
#define MILPSIM_RNG_H_

#include <cstdint>
#include <random>

namespace milpsim {

// Seeded stream used everywhere randomness appears. The mapping from engine
// output to doubles and integers is spelled out here instead of going through
// std::uniform_*_distribution, whose algorithms differ between standard
// libraries; seeded outputs are therefore portable.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1).
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Uniform integer in [lo, hi] (inclusive), rejection sampled.
  int64_t UniformInt(int64_t lo, int64_t hi);

  // Uniform index in [0, n). Requires n > 0.
  size_t Index(size_t n) {
    return static_cast<size_t>(UniformInt(0, static_cast<int64_t>(n) - 1));
  }

  bool Bernoulli(double p) { return Uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer over (seed, stream); used to derive independent
// sub-seeds for sub-tasks so that results do not depend on scheduling.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

}  // namespace milpsim

#endif  // MILPSIM_RNG_H_

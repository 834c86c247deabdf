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

#include <benchmark/benchmark.h>

#include "milpsim/branch_and_bound.h"
#include "milpsim/generate.h"
#include "milpsim/simplex.h"

namespace milpsim {
namespace {

void BM_RootRelaxation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MilpInstance inst = GenerateInstance(Family::kPlacement, n, n * 2 / 5, 1).instance;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveLpRelaxation(inst));
  }
}
BENCHMARK(BM_RootRelaxation)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_BranchAndBound(benchmark::State& state) {
  const MilpInstance inst = GenerateInstance(Family::kPlacement, 80, 32, 2).instance;
  const SolverConfig config = DefaultConfigSpace().default_config;
  const Limits limits{state.range(0), 1e9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(BranchAndBound(inst, config, limits, 0));
  }
}
BENCHMARK(BM_BranchAndBound)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace milpsim

BENCHMARK_MAIN();

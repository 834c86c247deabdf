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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "milpsim/config_store.h"
#include "milpsim/rng.h"

namespace milpsim {
namespace {

ConfigStore RandomStore(int records) {
  Rng rng(3);
  ConfigStore store;
  for (int r = 0; r < records; ++r) {
    std::vector<double> e(kEmbeddingWidth);
    for (double& v : e) v = rng.Uniform(-1.0, 1.0);
    for (int t = 0; t < 4; ++t) {
      store.InsertTrial("r" + std::to_string(r), e, SampleConfig(DefaultConfigSpace(), t),
                        rng.Uniform(0.0, 100.0), TrialSource::kSearch);
    }
  }
  return store;
}

void BM_KnnQuery(benchmark::State& state) {
  const ConfigStore store = RandomStore(static_cast<int>(state.range(0)));
  Rng rng(4);
  std::vector<double> query(kEmbeddingWidth);
  for (double& v : query) v = rng.Uniform(-1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(store.KnnQuery(query, 5));
  }
}
BENCHMARK(BM_KnnQuery)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_PredictConfig(benchmark::State& state) {
  const ConfigStore store = RandomStore(1000);
  Rng rng(5);
  std::vector<double> query(kEmbeddingWidth);
  for (double& v : query) v = rng.Uniform(-1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(store.PredictConfig(query, 3, 2));
  }
}
BENCHMARK(BM_PredictConfig)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace milpsim

BENCHMARK_MAIN();

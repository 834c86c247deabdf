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

#include <vector>

#include <benchmark/benchmark.h>

#include "milpsim/encoder.h"
#include "milpsim/featurize.h"
#include "milpsim/generate.h"
#include "milpsim/trainer.h"

namespace milpsim {
namespace {

BipartiteGraph Graph(uint64_t seed) {
  return ExtractBipartite(GenerateInstance(Family::kPlacement, 80, 32, seed).instance);
}

void BM_Forward(benchmark::State& state) {
  const EncoderModel model = InitModel(1, static_cast<int>(state.range(0)));
  const BipartiteGraph graph = Graph(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ForwardEmbed(model, graph));
  }
}
BENCHMARK(BM_Forward)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_ForwardBackward(benchmark::State& state) {
  const EncoderModel model = InitModel(1, static_cast<int>(state.range(0)));
  const BipartiteGraph graph = Graph(1);
  const std::vector<double> upstream(kEmbeddingWidth, 1.0);
  std::vector<double> gradient(model.params().size());
  for (auto _ : state) {
    ForwardCache cache;
    ForwardEmbed(model, graph, &cache);
    BackwardEmbed(model, graph, cache, upstream, gradient);
    benchmark::DoNotOptimize(gradient.data());
  }
}
BENCHMARK(BM_ForwardBackward)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_TrainStep(benchmark::State& state) {
  EncoderModel model = InitModel(1);
  std::vector<BipartiteGraph> graphs;
  for (uint64_t s = 0; s < 6; ++s) graphs.push_back(Graph(s));
  TripletBatch batch;
  for (int b = 0; b < state.range(0); ++b) {
    batch.push_back({&graphs[b % 6], &graphs[(b + 1) % 6], &graphs[(b + 3) % 6]});
  }
  AdamState adam;
  for (auto _ : state) {
    benchmark::DoNotOptimize(TrainStep(model, adam, batch, 1e3, kLearningRate));
  }
}
BENCHMARK(BM_TrainStep)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace milpsim

BENCHMARK_MAIN();

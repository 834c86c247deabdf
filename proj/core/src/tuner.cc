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

#include "milpsim/tuner.h"

#include <algorithm>
#include <string>

#include "milpsim/branch_and_bound.h"
#include "milpsim/error.h"
#include "milpsim/metric_train.h"
#include "milpsim/parallel.h"
#include "milpsim/rng.h"

namespace milpsim {
namespace {

constexpr int kMaxConsecutiveSkips = 50;

}  // namespace

std::vector<Evaluation> SearchConfigs(const MilpInstance& instance, const ConfigSpace& space,
                                      const SearchBudget& budget) {
  if (budget.evaluations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "search budget needs at least one evaluation");
  }
  const std::string id = instance.ContentHash();
  const uint64_t solve_seed = SolveSeed(budget.seed);
  Rng rng(InstanceSeed(DeriveSeed(budget.seed, 1), id));

  std::vector<Evaluation> evaluated;
  size_t incumbent = 0;
  auto evaluate = [&](const SolverConfig& config) {
    const double cost =
        BranchAndBound(instance, config, budget.per_eval_limits, solve_seed).best_cost;
    evaluated.push_back({config, cost, static_cast<int>(evaluated.size())});
    if (cost < evaluated[incumbent].cost) incumbent = evaluated.size() - 1;
  };
  evaluate(Canonicalize(space.default_config));

  int skips = 0;
  bool uniform = true;
  while (static_cast<int>(evaluated.size()) < budget.evaluations &&
         skips < kMaxConsecutiveSkips) {
    SolverConfig proposal;
    if (uniform) {
      proposal = SampleConfig(space, rng.NextU64());
    } else {
      const int param = static_cast<int>(rng.Index(kNumConfigParameters));
      proposal = RedrawParameter(space, evaluated[incumbent].config, param, rng);
    }
    uniform = !uniform;
    proposal = Canonicalize(proposal);
    const bool seen = std::any_of(evaluated.begin(), evaluated.end(),
                                  [&](const Evaluation& e) { return e.config == proposal; });
    if (seen) {
      ++skips;
      continue;
    }
    skips = 0;
    evaluate(proposal);
  }
  std::stable_sort(evaluated.begin(), evaluated.end(),
                   [](const Evaluation& a, const Evaluation& b) { return a.cost < b.cost; });
  return evaluated;
}

std::vector<std::vector<Evaluation>> SearchAll(const std::vector<MilpInstance>& instances,
                                               const ConfigSpace& space,
                                               const SearchBudget& budget, int workers) {
  std::vector<std::vector<Evaluation>> results(instances.size());
  ParallelFor(instances.size(), workers,
              [&](size_t i) { results[i] = SearchConfigs(instances[i], space, budget); });
  return results;
}

SolverConfig IncumbentConfig(const std::vector<std::vector<Evaluation>>& results) {
  struct Score {
    SolverConfig config;
    double sum = 0.0;
    int count = 0;
  };
  std::vector<Score> scores;
  for (const auto& per_instance : results) {
    std::vector<Evaluation> in_order = per_instance;
    std::sort(in_order.begin(), in_order.end(),
              [](const Evaluation& a, const Evaluation& b) { return a.order < b.order; });
    for (const Evaluation& e : in_order) {
      auto it = std::find_if(scores.begin(), scores.end(),
                             [&](const Score& s) { return s.config == e.config; });
      if (it == scores.end()) {
        scores.push_back({e.config, 0.0, 0});
        it = scores.end() - 1;
      }
      it->sum += e.cost;
      ++it->count;
    }
  }
  if (scores.empty()) throw Error(ErrorCode::kInvalidArgument, "no search results");
  const Score* best = &scores.front();
  for (const Score& s : scores) {
    if (s.sum / s.count < best->sum / best->count) best = &s;
  }
  return best->config;
}

}  // namespace milpsim

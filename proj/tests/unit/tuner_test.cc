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

#include <algorithm>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "milpsim/branch_and_bound.h"
#include "milpsim/generate.h"
#include "milpsim/metric_train.h"
#include "milpsim/tuner.h"

namespace milpsim {
namespace {

MilpInstance Placement(uint64_t seed) {
  const MilpInstance inst = GenerateInstance(Family::kPlacement, 60, 24, seed).instance;
  return inst.WithName(inst.ContentHash());
}

SearchBudget Budget(int evaluations, uint64_t seed = 1) {
  return {evaluations, {30, 1e9}, seed};
}

TEST(Search, SingleEvaluationIsDefault) {
  const MilpInstance inst = Placement(1);
  const ConfigSpace space = DefaultConfigSpace();
  const auto result = SearchConfigs(inst, space, Budget(1));
  ASSERT_EQ(result.size(), 1u);
  EXPECT_EQ(result[0].config, space.default_config);
  EXPECT_EQ(result[0].order, 0);
  const double expected =
      BranchAndBound(inst, space.default_config, Budget(1).per_eval_limits, SolveSeed(1)).best_cost;
  EXPECT_EQ(result[0].cost, expected);
}

TEST(Search, SortedWithinBudgetAndNoWorseThanDefault) {
  const ConfigSpace space = DefaultConfigSpace();
  for (uint64_t seed = 0; seed < 8; ++seed) {
    const MilpInstance inst = Placement(seed);
    const auto result = SearchConfigs(inst, space, Budget(12, seed));
    ASSERT_LE(result.size(), 12u);
    ASSERT_FALSE(result.empty());
    for (size_t k = 1; k < result.size(); ++k) {
      EXPECT_LE(result[k - 1].cost, result[k].cost);
      if (result[k - 1].cost == result[k].cost) EXPECT_LT(result[k - 1].order, result[k].order);
    }
    const auto def = std::find_if(result.begin(), result.end(),
                                  [](const Evaluation& e) { return e.order == 0; });
    ASSERT_NE(def, result.end());
    EXPECT_EQ(def->config, space.default_config);
    EXPECT_LE(result.front().cost, def->cost);

    // Each evaluation is a distinct config, one solve each.
    std::set<int> orders;
    std::set<std::string> configs;
    for (const Evaluation& e : result) {
      orders.insert(e.order);
      configs.insert(SerializeConfig(e.config));
      EXPECT_TRUE(Contains(space, e.config));
    }
    EXPECT_EQ(orders.size(), result.size());
    EXPECT_EQ(configs.size(), result.size());
    EXPECT_EQ(*orders.rbegin(), static_cast<int>(result.size()) - 1);
  }
}

TEST(Search, CostsMatchIndependentSolves) {
  const MilpInstance inst = Placement(3);
  const SearchBudget budget = Budget(8, 5);
  for (const Evaluation& e : SearchConfigs(inst, DefaultConfigSpace(), budget)) {
    EXPECT_EQ(e.cost, BranchAndBound(inst, e.config, budget.per_eval_limits, SolveSeed(5)).best_cost);
  }
}

TEST(Search, AnytimeIncumbentNonIncreasing) {
  const MilpInstance inst = Placement(4);
  auto result = SearchConfigs(inst, DefaultConfigSpace(), Budget(15, 2));
  std::sort(result.begin(), result.end(),
            [](const Evaluation& a, const Evaluation& b) { return a.order < b.order; });
  double incumbent = kInfinity;
  std::vector<double> trace;
  for (const Evaluation& e : result) {
    incumbent = std::min(incumbent, e.cost);
    trace.push_back(incumbent);
  }
  EXPECT_TRUE(std::is_sorted(trace.rbegin(), trace.rend()));
}

TEST(Search, DeterministicAndWorkerIndependent) {
  std::vector<MilpInstance> instances;
  for (uint64_t seed = 10; seed < 16; ++seed) instances.push_back(Placement(seed));
  const ConfigSpace space = DefaultConfigSpace();
  const SearchBudget budget = Budget(6, 9);
  const auto serial = SearchAll(instances, space, budget, 1);
  const auto parallel = SearchAll(instances, space, budget, 3);
  ASSERT_EQ(serial.size(), instances.size());
  for (size_t i = 0; i < instances.size(); ++i) {
    const auto single = SearchConfigs(instances[i], space, budget);
    ASSERT_EQ(serial[i].size(), single.size());
    ASSERT_EQ(parallel[i].size(), single.size());
    for (size_t k = 0; k < single.size(); ++k) {
      EXPECT_EQ(serial[i][k].config, single[k].config);
      EXPECT_EQ(serial[i][k].cost, single[k].cost);
      EXPECT_EQ(parallel[i][k].config, single[k].config);
      EXPECT_EQ(parallel[i][k].order, single[k].order);
    }
  }
}

TEST(Incumbent, LowestMeanCostWithOrderTies) {
  const SolverConfig a = SampleConfig(DefaultConfigSpace(), 1);
  const SolverConfig b = SampleConfig(DefaultConfigSpace(), 2);
  const SolverConfig c = SampleConfig(DefaultConfigSpace(), 3);
  // a: mean 5, b: mean 4, c: mean 4 (met after b).
  const std::vector<std::vector<Evaluation>> results = {
      {{b, 2.0, 1}, {a, 4.0, 0}, {c, 4.0, 2}},
      {{a, 6.0, 0}, {b, 6.0, 1}, {c, 4.0, 2}},
  };
  EXPECT_EQ(IncumbentConfig(results), b);
  const std::vector<std::vector<Evaluation>> single = {{{a, 1.0, 0}}, {{c, 0.5, 1}}};
  EXPECT_EQ(IncumbentConfig(single), c);
}

}  // namespace
}  // namespace milpsim

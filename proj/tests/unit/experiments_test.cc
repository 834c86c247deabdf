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

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "milpsim/branch_and_bound.h"
#include "milpsim/config_store.h"
#include "milpsim/csv.h"
#include "milpsim/encoder.h"
#include "milpsim/error.h"
#include "milpsim/experiments.h"
#include "milpsim/featurize.h"
#include "milpsim/generate.h"
#include "milpsim/metric_train.h"
#include "oracles/reference_stats.h"
#include "support/test_util.h"

namespace milpsim {
namespace {

using testing::ThrownCode;

TEST(Pearson, Examples) {
  const std::vector<double> x = {1, 2, 3};
  EXPECT_DOUBLE_EQ(PearsonR(x, x), 1.0);
  EXPECT_DOUBLE_EQ(PearsonR(x, std::vector<double>{-1, -2, -3}), -1.0);
  EXPECT_NEAR(PearsonR(std::vector<double>{1, 2, 3, 4}, std::vector<double>{2, 1, 4, 3}), 0.6,
              1e-15);
}

TEST(Pearson, Errors) {
  const std::vector<double> x = {1, 2, 3};
  EXPECT_EQ(ThrownCode([&] { PearsonR(x, std::vector<double>{4, 4, 4}); }),
            ErrorCode::kConstantInput);
  EXPECT_EQ(ThrownCode([&] { PearsonR(x, std::vector<double>{1, 2}); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(ThrownCode([] { PearsonR(std::vector<double>{1}, std::vector<double>{1}); }),
            ErrorCode::kDimensionMismatch);
}

TEST(Pearson, MatchesTextbookFormulaAndIsSymmetric) {
  Rng rng(8);
  for (int t = 0; t < 500; ++t) {
    const int n = static_cast<int>(rng.UniformInt(2, 60));
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.Uniform(-1, 1);
      y[i] = 0.3 * x[i] + rng.Uniform(-1, 1);
    }
    const double r = PearsonR(x, y);
    EXPECT_NEAR(r, oracle::TextbookPearson(x, y), 1e-12);
    EXPECT_EQ(r, PearsonR(y, x));
    EXPECT_LE(std::abs(r), 1.0);
  }
}

TEST(RelativeImprovement, Rules) {
  EXPECT_EQ(RelativeImprovement(10.0, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(RelativeImprovement(10.0, 8.0), 0.2);
  EXPECT_DOUBLE_EQ(RelativeImprovement(-10.0, -12.0), 0.2);
  EXPECT_EQ(RelativeImprovement(kInfinity, kInfinity), 0.0);
  EXPECT_EQ(RelativeImprovement(kInfinity, 3.0), 1.0);
  EXPECT_EQ(RelativeImprovement(3.0, kInfinity), -1.0);
}

TEST(ExperimentConfigs, DefaultFirstAndDistinct) {
  const auto configs = ExperimentConfigs(8, 4);
  ASSERT_EQ(configs.size(), 8u);
  EXPECT_EQ(configs[0], DefaultConfigSpace().default_config);
  EXPECT_EQ(configs, ExperimentConfigs(8, 4));
  EXPECT_EQ(ThrownCode([] { ExperimentConfigs(1, 0); }), ErrorCode::kInvalidArgument);
}

// Two placement instances, each present twice under different names. The
// twins share a default cost; the two originals are far apart.
struct TwinSet {
  std::vector<MilpInstance> instances;
  CostTable table;
};

TwinSet Twins() {
  TwinSet set;
  const MilpInstance a = GenerateInstance(Family::kPlacement, 80, 32, 11).instance;
  const MilpInstance b = GenerateInstance(Family::kPlacement, 80, 32, 12).instance;
  const std::vector<std::pair<MilpInstance, double>> members = {
      {a.WithName("a1"), 0.0}, {a.WithName("a2"), 0.0}, {b.WithName("b1"), 100.0},
      {b.WithName("b2"), 100.0}};
  for (const auto& [inst, cost] : members) {
    set.instances.push_back(inst);
    set.table.entries.push_back({inst.name(), cost, cost});
  }
  return set;
}

TEST(Correlation, IdenticalPairsAndRecomputableRows) {
  const TwinSet set = Twins();
  CorrelationOptions options;
  options.pairs = 2;
  options.limits = {20, 1e9};
  options.seed = 3;
  const auto configs = ExperimentConfigs(6, 3);
  const CorrelationReport report =
      CorrelationExperiment(set.instances, set.table, configs, options);
  ASSERT_EQ(report.rows.size(), 4u);
  int similar = 0;
  for (const PairRow& row : report.rows) {
    if (row.kind == "similar") {
      ++similar;
      EXPECT_EQ(row.id_a[0], row.id_b[0]);
      EXPECT_EQ(row.r, 1.0);
      EXPECT_EQ(row.cost_gap, 0.0);
    } else {
      EXPECT_EQ(row.kind, "dissimilar");
      EXPECT_EQ(row.cost_gap, 100.0);
    }
    // Every row is recomputable from the emitted cost matrix.
    const size_t ia = *set.table.Find(row.id_a), ib = *set.table.Find(row.id_b);
    EXPECT_EQ(row.r, PearsonR(report.costs[ia], report.costs[ib]));
  }
  EXPECT_EQ(similar, 2);
  EXPECT_EQ(report.mean_similar, 1.0);

  const auto csv = ParseCsv(CorrelationToCsv(report));
  EXPECT_EQ(csv[0], (CsvRecord{"kind", "instance_a", "instance_b", "cost_gap", "pearson_r"}));
  EXPECT_EQ(csv.size(), 5u);
  const auto hist = ParseCsv(CorrelationHistogramCsv(report));
  int total = 0;
  for (size_t r = 1; r < hist.size(); ++r) {
    for (size_t c = 2; c < hist[r].size(); ++c) total += std::stoi(hist[r][c]);
  }
  EXPECT_EQ(hist.size(), 21u);
  EXPECT_EQ(total, 4);
}

TEST(Correlation, InsufficientPairs) {
  const TwinSet set = Twins();
  CorrelationOptions options;
  options.pairs = 3;
  options.limits = {20, 1e9};
  EXPECT_EQ(ThrownCode([&] {
              CorrelationExperiment(set.instances, set.table, ExperimentConfigs(4, 0), options);
            }),
            ErrorCode::kInsufficientPairs);
}

TEST(ShallowScaler, MinMaxAndRoundTrip) {
  ShallowFeatures a{}, b{};
  for (int k = 0; k < kShallowFeatureCount; ++k) {
    a[k] = k;
    b[k] = k == 5 ? 5 : 3 * k;
  }
  const ShallowScaler s = ShallowScaler::Fit({a, b});
  const std::vector<double> sa = s.Apply(a), sb = s.Apply(b);
  EXPECT_EQ(sa[1], 0.0);
  EXPECT_EQ(sb[1], 1.0);
  EXPECT_EQ(sa[5], 0.0);
  EXPECT_EQ(sb[5], 0.0);
  EXPECT_EQ(sa[0], 0.0);
  const ShallowScaler back = ShallowScaler::FromCsv(s.ToCsv());
  EXPECT_EQ(back.lo, s.lo);
  EXPECT_EQ(back.hi, s.hi);
}

TEST(CostScale, FitAndApply) {
  CostTable table;
  table.entries = {{"a", 10.0, 0.0}, {"b", 30.0, 100.0}, {"c", kInfinity, kInfinity}};
  const CostScale scale = CostScale::Fit(table);
  EXPECT_EQ(scale.Apply(20.0), 50.0);
  EXPECT_EQ(scale.Apply(40.0), 150.0);
  EXPECT_EQ(scale.Apply(kInfinity), kInfinity);
  const CostScale flat{5.0, 5.0};
  EXPECT_EQ(flat.Apply(9.0), 0.0);
}

struct MiniBench {
  std::vector<MilpInstance> train, test;
  std::vector<Embedding> train_deep, test_deep;
  std::vector<std::vector<double>> train_shallow, test_shallow;
  ConfigStore deep_store{kEmbeddingWidth};
  ConfigStore shallow_store{kShallowFeatureCount};
};

MiniBench MakeMiniBench(const Limits& limits, uint64_t seed) {
  MiniBench b;
  const EncoderModel model = InitModel(1, 8);
  std::vector<ShallowFeatures> raw;
  for (uint64_t s = 0; s < 8; ++s) {
    const MilpInstance inst = GenerateInstance(Family::kPlacement, 60, 24, 200 + s).instance;
    (s < 6 ? b.train : b.test).push_back(inst.WithName(inst.ContentHash()));
  }
  for (const MilpInstance& inst : b.train) raw.push_back(ComputeShallowFeatures(inst));
  const ShallowScaler scaler = ShallowScaler::Fit(raw);
  const auto configs = ExperimentConfigs(3, 9);
  for (const MilpInstance& inst : b.train) {
    const Embedding e = ForwardEmbed(model, ExtractBipartite(inst));
    const std::vector<double> sh = scaler.Apply(ComputeShallowFeatures(inst));
    for (const SolverConfig& c : configs) {
      const double cost = BranchAndBound(inst, c, limits, SolveSeed(seed)).best_cost;
      b.deep_store.InsertTrial(inst.name(), e, c, cost, TrialSource::kSearch);
      b.shallow_store.InsertTrial(inst.name(), sh, c, cost, TrialSource::kSearch);
    }
  }
  for (const MilpInstance& inst : b.test) {
    b.test_deep.push_back(ForwardEmbed(model, ExtractBipartite(inst)));
    b.test_shallow.push_back(scaler.Apply(ComputeShallowFeatures(inst)));
  }
  return b;
}

TEST(Compare, ShapeWinsAndSelfComparison) {
  const Limits limits{20, 1e9};
  const MiniBench b = MakeMiniBench(limits, 4);
  CompareOptions options;
  options.limits = limits;
  options.seed = 4;
  const SolverConfig incumbent = SampleConfig(DefaultConfigSpace(), 5);
  const CompareReport r = CompareBaselines(b.test, b.test_deep, b.test_shallow, b.deep_store,
                                           b.shallow_store, incumbent, options);
  const size_t t = b.test.size();
  ASSERT_EQ(r.costs.size(), t);
  ASSERT_EQ(r.configs.size(), t);
  int wins = 0;
  for (int m = 0; m < kNumMethods; ++m) wins += r.wins[m];
  EXPECT_GE(wins + r.no_solution, static_cast<int>(t));
  EXPECT_EQ(r.mean_improvement[0], 0.0);
  EXPECT_EQ(r.ci_half_width[0], 0.0);
  for (size_t i = 0; i < t; ++i) {
    EXPECT_EQ(r.costs[i][0],
              BranchAndBound(b.test[i], DefaultConfigSpace().default_config, limits, SolveSeed(4))
                  .best_cost);
    EXPECT_EQ(r.costs[i][1], BranchAndBound(b.test[i], incumbent, limits, SolveSeed(4)).best_cost);
  }
  // Aggregates are recomputable from the per-instance matrix.
  for (int m = 0; m < kNumMethods; ++m) {
    std::vector<double> imp;
    int w = 0;
    for (size_t i = 0; i < t; ++i) {
      imp.push_back(RelativeImprovement(r.costs[i][0], r.costs[i][m]));
      double best = kInfinity;
      for (double c : r.costs[i]) best = std::min(best, c);
      if (std::isfinite(best) && r.costs[i][m] <= best + 1e-9) ++w;
    }
    EXPECT_NEAR(r.mean_improvement[m], std::accumulate(imp.begin(), imp.end(), 0.0) / t, 1e-15);
    EXPECT_EQ(r.wins[m], w);
  }
  const auto rows = ParseCsv(CompareToCsv(r));
  EXPECT_EQ(rows.size(), t + 1);
  const auto summary = ParseCsv(CompareSummaryCsv(r));
  EXPECT_GE(summary.size(), static_cast<size_t>(kNumMethods + 1));
}

TEST(Compare, EmptyStore) {
  const MiniBench b = MakeMiniBench({5, 1e9}, 0);
  const ConfigStore empty(kEmbeddingWidth);
  EXPECT_EQ(ThrownCode([&] {
              CompareBaselines(b.test, b.test_deep, b.test_shallow, empty, b.shallow_store,
                               DefaultConfigSpace().default_config, {});
            }),
            ErrorCode::kEmptyStore);
}

TEST(Accuracy, StoredInstanceHasZeroError) {
  const Limits limits{20, 1e9};
  const MiniBench b = MakeMiniBench(limits, 6);
  CostTable train_costs;
  for (const MilpInstance& inst : b.train) {
    const double c =
        BranchAndBound(inst, DefaultConfigSpace().default_config, limits, SolveSeed(6)).best_cost;
    train_costs.entries.push_back({inst.name(), c, 0.0});
  }
  const CostScale scale = CostScale::Fit(train_costs);
  // Query the stored training instances themselves.
  std::vector<Embedding> queries;
  for (const MilpInstance& inst : b.train) queries.push_back(b.deep_store.Get(inst.name())->embedding);
  const AccuracyReport r =
      PredictionAccuracy(b.train, queries, b.deep_store, scale, 1, 1, limits, 6, 2);
  ASSERT_EQ(r.rows.size(), b.train.size());
  ASSERT_EQ(r.random_rows.size(), b.train.size());
  for (size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_EQ(r.rows[i].instance_id, b.train[i].ContentHash());
    EXPECT_EQ(r.rows[i].neighbor_id, b.train[i].name());
    if (std::isfinite(r.rows[i].actual)) EXPECT_EQ(r.rows[i].predicted, r.rows[i].actual);
  }
  EXPECT_EQ(r.mae, 0.0);
  const auto rows = ParseCsv(AccuracyToCsv(r));
  EXPECT_EQ(rows.size(), 2 * b.train.size() + 1);
  EXPECT_EQ(ParseCsv(AccuracySummaryCsv(r)).size(), 3u);
}

TEST(ExportCsv, Layout) {
  const std::vector<Embedding> e = {{0.5, -1.0}, {2.0, 0.25}};
  const auto rows = ParseCsv(EmbeddingsToCsv({"x", "y"}, e, {1.0, kInfinity}));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (CsvRecord{"instance_id", "e0", "e1", "cost"}));
  EXPECT_EQ(rows[1], (CsvRecord{"x", "0.5", "-1", "1"}));
  EXPECT_EQ(rows[2], (CsvRecord{"y", "2", "0.25", "inf"}));
}

}  // namespace
}  // namespace milpsim

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

#ifndef MILPSIM_EXPERIMENTS_H_
#define MILPSIM_EXPERIMENTS_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "milpsim/config_store.h"
#include "milpsim/featurize.h"
#include "milpsim/metric_train.h"
#include "milpsim/milp.h"
#include "milpsim/solver_config.h"

namespace milpsim {

// Sample Pearson coefficient. Throws Error(kDimensionMismatch) on unequal
// lengths or fewer than two points, Error(kConstantInput) if either vector is
// constant.
double PearsonR(std::span<const double> xs, std::span<const double> ys);

// The default configuration followed by count - 1 draws
// SampleConfig(space, DeriveSeed(seed, 1000 + s)).
std::vector<SolverConfig> ExperimentConfigs(int count, uint64_t seed);

// Relative improvement of `cost` over `baseline` for a minimization:
// (baseline - cost) / max(|baseline|, 1e-9). With infinite costs: both
// infinite gives 0, only cost finite gives +1, only baseline finite gives -1.
double RelativeImprovement(double baseline, double cost);

struct CorrelationOptions {
  int pairs = 50;  // per kind
  double c_thr = 1.0;
  double hard_factor = 10.0;
  Limits limits;
  uint64_t seed = 0;
  int workers = 1;
};

struct PairRow {
  std::string kind;  // "similar" or "dissimilar"
  std::string id_a;
  std::string id_b;
  double cost_gap = 0.0;  // normalized default-cost gap
  double r = 0.0;
};

struct CorrelationReport {
  std::vector<PairRow> rows;
  double mean_similar = 0.0;
  double mean_dissimilar = 0.0;
  int skipped_similar = 0;  // candidate pairs with an infinite or constant cost vector
  int skipped_dissimilar = 0;
  // costs[i][c]: best cost of instance i under configuration c.
  std::vector<std::vector<double>> costs;
};

// Similar pairs have |dC| <= c_thr and dissimilar pairs |dC| >= Gamma * c_thr
// on the normalized default costs of `table` (entries aligned with
// `instances`). Candidate pairs are visited in a seeded shuffle; a pair whose
// cost vectors contain +inf or are constant is skipped. Throws
// Error(kInsufficientPairs) if either kind runs out.
CorrelationReport CorrelationExperiment(const std::vector<MilpInstance>& instances,
                                        const CostTable& table,
                                        const std::vector<SolverConfig>& configs,
                                        const CorrelationOptions& options);

std::string CorrelationToCsv(const CorrelationReport& report);
// Counts per kind over 20 bins of width 0.1 on [-1, 1].
std::string CorrelationHistogramCsv(const CorrelationReport& report);

// Per-dimension min-max scaling fitted on a training set; constant dimensions
// map to 0.
struct ShallowScaler {
  std::array<double, kShallowFeatureCount> lo{};
  std::array<double, kShallowFeatureCount> hi{};

  static ShallowScaler Fit(const std::vector<ShallowFeatures>& features);
  std::vector<double> Apply(const ShallowFeatures& features) const;
  std::string ToCsv() const;
  static ShallowScaler FromCsv(std::string_view text);
};

inline constexpr int kNumMethods = 4;
inline constexpr std::array<const char*, kNumMethods> kMethodNames = {
    "default", "incumbent", "shallow_knn", "deep_knn"};

struct CompareOptions {
  int k = 1;
  int n = 1;
  Limits limits;
  uint64_t seed = 0;
  int workers = 1;
};

struct CompareReport {
  std::vector<std::string> instance_ids;
  std::vector<std::array<double, kNumMethods>> costs;
  std::vector<std::array<std::string, kNumMethods>> configs;
  std::array<int, kNumMethods> wins{};
  int no_solution = 0;
  std::array<double, kNumMethods> mean_improvement{};
  std::array<double, kNumMethods> ci_half_width{};  // 1.96 * sample sd / sqrt(T)
};

// Solves every test instance with the default configuration, the incumbent,
// the PredictConfig choice from the shallow store and the one from the deep
// store. A store without finite candidates falls back to the default. Every
// method within 1e-9 of the per-instance minimum gets a win; instances where
// all costs are +inf count as "no solution" and award no wins.
CompareReport CompareBaselines(const std::vector<MilpInstance>& test,
                               const std::vector<Embedding>& deep_queries,
                               const std::vector<std::vector<double>>& shallow_queries,
                               const ConfigStore& deep_store, const ConfigStore& shallow_store,
                               const SolverConfig& incumbent, const CompareOptions& options);

std::string CompareToCsv(const CompareReport& report);
std::string CompareSummaryCsv(const CompareReport& report);

// Affine map onto the normalized scale fitted on training default costs:
// 100 (x - lo) / (hi - lo), unclamped, 0 when hi == lo.
struct CostScale {
  double lo = 0.0;
  double hi = 0.0;

  static CostScale Fit(const CostTable& table);
  double Apply(double raw) const;
};

struct AccuracyRow {
  std::string instance_id;
  std::string neighbor_id;
  std::string config;
  double predicted = 0.0;  // neighbor's stored cost, normalized
  double actual = 0.0;     // cost of the test instance under that config, normalized
};

struct AccuracyReport {
  std::vector<AccuracyRow> rows;
  std::vector<AccuracyRow> random_rows;
  double mae = 0.0;
  double random_mae = 0.0;
  // Predicted vs actual over rows with finite actual cost; NaN when fewer
  // than two such rows exist or either side is constant.
  double pearson = 0.0;
  int infinite_actual = 0;
  int random_infinite_actual = 0;
};

// Nearest-neighbor prediction (PredictConfig with k, n) against a baseline whose
// neighbor is drawn uniformly from the records holding a finite trial and
// whose config is that record's cheapest trial. MAE is taken over rows whose
// actual cost is finite.
AccuracyReport PredictionAccuracy(const std::vector<MilpInstance>& test,
                                  const std::vector<Embedding>& queries,
                                  const ConfigStore& store, const CostScale& scale, int k,
                                  int n, const Limits& limits, uint64_t seed, int workers);

std::string AccuracyToCsv(const AccuracyReport& report);
std::string AccuracySummaryCsv(const AccuracyReport& report);

// instance_id, e0..e(d-1), cost; an infinite or missing cost is written
// "inf" or left empty.
std::string EmbeddingsToCsv(const std::vector<std::string>& ids,
                            const std::vector<Embedding>& embeddings,
                            const std::vector<double>& costs);

}  // namespace milpsim

#endif  // MILPSIM_EXPERIMENTS_H_

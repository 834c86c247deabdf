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

#ifndef MILPSIM_METRIC_TRAIN_H_
#define MILPSIM_METRIC_TRAIN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "milpsim/encoder.h"
#include "milpsim/milp.h"
#include "milpsim/solver_config.h"
#include "milpsim/trainer.h"

namespace milpsim {

inline constexpr double kNormalizedCostMax = 100.0;

struct CostEntry {
  std::string instance_id;
  double raw_cost = kInfinity;
  // In [0, 100] for finite raw costs, +inf otherwise.
  double normalized_cost = kInfinity;
};

// Entries keep the order in which instances were labeled.
struct CostTable {
  std::vector<CostEntry> entries;

  std::optional<size_t> Find(const std::string& instance_id) const;
  size_t NumFinite() const;
};

// Affine map of the finite values onto [0, 100] (min to 0, max to 100); a
// constant set maps to 0 and +inf stays +inf. A set already spanning exactly
// [0, 100] is returned unchanged.
std::vector<double> NormalizeCosts(const std::vector<double>& raw);

// Per-instance stream: DeriveSeed(seed, hash of the id), so it depends on the
// instance and not on its position in a list.
uint64_t InstanceSeed(uint64_t seed, const std::string& instance_id);

// Seed of every branch-and-bound run under a global seed. It is the same for
// all instances, so the cost of an (instance, config) pair is one number
// wherever it is computed.
uint64_t SolveSeed(uint64_t seed);

// Solves every instance once with the default configuration. Independent
// solves run on `workers` threads; the table does not depend on the count.
CostTable LabelCosts(const std::vector<MilpInstance>& instances, const Limits& limits,
                     uint64_t seed, int workers = 1);

// CSV with header instance_id,raw_cost,normalized_cost. Infinite raw costs
// are written "inf" with an empty normalized field.
std::string CostTableToCsv(const CostTable& table);
CostTable CostTableFromCsv(std::string_view text);

struct SamplingSchedule {
  double c_thr = 1.0;
  double hard_factor = 10.0;  // Gamma
  int epochs_hard = 50;       // e1
  int epochs_total = 100;
  int batch_size = 32;
  uint64_t rng_seed = 0;
};

// Throws Error(kInvalidArgument) unless e1 <= epochs_total, c_thr > 0,
// Gamma > 1, Gamma * c_thr <= 100 and batch_size >= 1.
void ValidateSchedule(const SamplingSchedule& schedule);

struct TripletIds {
  size_t anchor = 0;
  size_t positive = 0;
  size_t negative = 0;

  friend bool operator==(const TripletIds&, const TripletIds&) = default;
  friend auto operator<=>(const TripletIds&, const TripletIds&) = default;
};

// Positive: |C(a) - C(p)| < c_thr. Negative before epoch e1:
// |C(a) - C(n)| >= Gamma * c_thr; from e1 on: |C(a) - C(n)| > c_thr.
// Entries with infinite cost never take part.
class TripletSampler {
 public:
  TripletSampler(const CostTable& table, const SamplingSchedule& schedule);

  bool IsHardEpoch(int epoch) const { return epoch < schedule_.epochs_hard; }
  // Anchors that admit both a positive and a phase-valid negative.
  size_t NumAnchors(bool hard) const;

  // Anchor uniform over admissible anchors, then positive and negative
  // uniform over that anchor's candidates. Indices refer to table entries.
  // Throws Error(kNoValidTriplet) if no anchor is admissible.
  TripletIds Sample(int epoch, Rng& rng) const;

  static bool IsPositive(double anchor_cost, double cost, double c_thr);
  static bool IsNegative(double anchor_cost, double cost, double c_thr, double factor,
                         bool hard);

 private:
  struct Candidates {
    size_t anchor = 0;
    std::vector<size_t> positives;
    std::vector<size_t> negatives;
  };

  SamplingSchedule schedule_;
  std::vector<Candidates> hard_;
  std::vector<Candidates> relaxed_;
};

struct TrainResult {
  EncoderModel model;
  std::vector<double> loss_curve;  // mean step loss per epoch
  double hard_factor_used = 0.0;
  std::vector<std::string> warnings;
};

// Runs epochs_total epochs of ceil(finite entries / batch_size) Adam steps,
// each on batch_size sampled triplets, alpha = 0.1, lr = 1e-3. graphs[i]
// belongs to table.entries[i]. If the hard phase has no valid triplet, Gamma
// is halved (while it stays above 1) and a warning is recorded.
TrainResult TrainMetricModel(const std::vector<BipartiteGraph>& graphs,
                             const CostTable& table, const SamplingSchedule& schedule,
                             int hidden = kHiddenWidth);

std::string LossCurveToCsv(const std::vector<double>& loss_curve);

// Fraction of triplets with |f(a) - f(p)| < |f(a) - f(n)|, given per-entry
// embeddings.
double SeparationFraction(const std::vector<Embedding>& embeddings,
                          const std::vector<TripletIds>& triplets);

}  // namespace milpsim

#endif  // MILPSIM_METRIC_TRAIN_H_

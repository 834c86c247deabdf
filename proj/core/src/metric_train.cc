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

#include "milpsim/metric_train.h"

#include <algorithm>
#include <cmath>
#include <string_view>

#include "milpsim/branch_and_bound.h"
#include "milpsim/csv.h"
#include "milpsim/error.h"
#include "milpsim/parallel.h"
#include "milpsim/rng.h"

namespace milpsim {

std::optional<size_t> CostTable::Find(const std::string& instance_id) const {
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].instance_id == instance_id) return i;
  }
  return std::nullopt;
}

size_t CostTable::NumFinite() const {
  return std::count_if(entries.begin(), entries.end(),
                       [](const CostEntry& e) { return std::isfinite(e.raw_cost); });
}

std::vector<double> NormalizeCosts(const std::vector<double>& raw) {
  double lo = kInfinity;
  double hi = -kInfinity;
  for (double v : raw) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> out(raw.size(), kInfinity);
  for (size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i])) continue;
    if (lo == 0.0 && hi == kNormalizedCostMax) {
      out[i] = raw[i];
    } else if (hi > lo) {
      out[i] = std::clamp((raw[i] - lo) / (hi - lo) * kNormalizedCostMax, 0.0,
                          kNormalizedCostMax);
    } else {
      out[i] = 0.0;
    }
  }
  return out;
}

uint64_t InstanceSeed(uint64_t seed, const std::string& instance_id) {
  uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : instance_id) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  return DeriveSeed(seed, hash);
}

uint64_t SolveSeed(uint64_t seed) { return DeriveSeed(seed, 0x5eed); }

CostTable LabelCosts(const std::vector<MilpInstance>& instances, const Limits& limits,
                     uint64_t seed, int workers) {
  if (instances.empty()) throw Error(ErrorCode::kInvalidArgument, "no instances to label");
  const SolverConfig config = DefaultConfigSpace().default_config;
  CostTable table;
  table.entries.resize(instances.size());
  ParallelFor(instances.size(), workers, [&](size_t i) {
    CostEntry& entry = table.entries[i];
    entry.instance_id = instances[i].ContentHash();
    entry.raw_cost =
        BranchAndBound(instances[i], config, limits, SolveSeed(seed))
            .best_cost;
  });
  std::vector<double> raw;
  for (const CostEntry& e : table.entries) raw.push_back(e.raw_cost);
  const std::vector<double> normalized = NormalizeCosts(raw);
  for (size_t i = 0; i < raw.size(); ++i) table.entries[i].normalized_cost = normalized[i];
  return table;
}

std::string CostTableToCsv(const CostTable& table) {
  std::string out = CsvLine({"instance_id", "raw_cost", "normalized_cost"});
  for (const CostEntry& e : table.entries) {
    out += CsvLine({e.instance_id, FormatCost(e.raw_cost),
                    std::isfinite(e.normalized_cost) ? FormatCost(e.normalized_cost) : ""});
  }
  return out;
}

CostTable CostTableFromCsv(std::string_view text) {
  const std::vector<CsvRecord> rows = ParseCsv(text);
  if (rows.empty() || rows[0] != CsvRecord{"instance_id", "raw_cost", "normalized_cost"}) {
    throw Error(ErrorCode::kMalformedFile, "cost table: missing header");
  }
  CostTable table;
  for (size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 3) {
      throw Error(ErrorCode::kMalformedFile,
                  "cost table: row " + std::to_string(r + 1) + " needs 3 fields");
    }
    CostEntry e;
    e.instance_id = rows[r][0];
    e.raw_cost = ParseCost(rows[r][1]);
    e.normalized_cost = rows[r][2].empty() ? kInfinity : ParseCost(rows[r][2]);
    if (std::isfinite(e.raw_cost) != std::isfinite(e.normalized_cost)) {
      throw Error(ErrorCode::kMalformedFile,
                  "cost table: row " + std::to_string(r + 1) + " mixes finite and inf");
    }
    table.entries.push_back(std::move(e));
  }
  return table;
}

void ValidateSchedule(const SamplingSchedule& s) {
  const bool ok = s.c_thr > 0.0 && s.hard_factor > 1.0 &&
                  s.hard_factor * s.c_thr <= kNormalizedCostMax && s.epochs_hard >= 0 &&
                  s.epochs_hard <= s.epochs_total && s.epochs_total >= 1 && s.batch_size >= 1;
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "invalid sampling schedule");
}

bool TripletSampler::IsPositive(double anchor_cost, double cost, double c_thr) {
  return std::abs(anchor_cost - cost) < c_thr;
}

bool TripletSampler::IsNegative(double anchor_cost, double cost, double c_thr, double factor,
                                bool hard) {
  const double gap = std::abs(anchor_cost - cost);
  return hard ? gap >= factor * c_thr : gap > c_thr;
}

TripletSampler::TripletSampler(const CostTable& table, const SamplingSchedule& schedule)
    : schedule_(schedule) {
  ValidateSchedule(schedule);
  const auto& e = table.entries;
  for (size_t a = 0; a < e.size(); ++a) {
    const double ca = e[a].normalized_cost;
    if (!std::isfinite(ca)) continue;
    Candidates hard{a, {}, {}};
    Candidates relaxed{a, {}, {}};
    for (size_t j = 0; j < e.size(); ++j) {
      const double cj = e[j].normalized_cost;
      if (j == a || !std::isfinite(cj)) continue;
      if (IsPositive(ca, cj, schedule.c_thr)) {
        hard.positives.push_back(j);
        relaxed.positives.push_back(j);
      }
      if (IsNegative(ca, cj, schedule.c_thr, schedule.hard_factor, true)) {
        hard.negatives.push_back(j);
      }
      if (IsNegative(ca, cj, schedule.c_thr, schedule.hard_factor, false)) {
        relaxed.negatives.push_back(j);
      }
    }
    if (!hard.positives.empty() && !hard.negatives.empty()) hard_.push_back(std::move(hard));
    if (!relaxed.positives.empty() && !relaxed.negatives.empty()) {
      relaxed_.push_back(std::move(relaxed));
    }
  }
}

size_t TripletSampler::NumAnchors(bool hard) const {
  return hard ? hard_.size() : relaxed_.size();
}

TripletIds TripletSampler::Sample(int epoch, Rng& rng) const {
  const std::vector<Candidates>& pool = IsHardEpoch(epoch) ? hard_ : relaxed_;
  if (pool.empty()) {
    throw Error(ErrorCode::kNoValidTriplet,
                "no anchor admits both a positive and a negative at epoch " +
                    std::to_string(epoch));
  }
  const Candidates& c = pool[rng.Index(pool.size())];
  const size_t p = c.positives[rng.Index(c.positives.size())];
  const size_t n = c.negatives[rng.Index(c.negatives.size())];
  return {c.anchor, p, n};
}

TrainResult TrainMetricModel(const std::vector<BipartiteGraph>& graphs,
                             const CostTable& table, const SamplingSchedule& schedule,
                             int hidden) {
  if (graphs.size() != table.entries.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one graph per cost-table entry is required");
  }
  SamplingSchedule effective = schedule;
  std::vector<std::string> warnings;
  std::optional<TripletSampler> sampler;
  sampler.emplace(table, effective);
  while (effective.epochs_hard > 0 && sampler->NumAnchors(true) == 0 &&
         effective.hard_factor / 2.0 > 1.0) {
    effective.hard_factor /= 2.0;
    warnings.push_back("NoValidTriplet in the hard phase; lowering Gamma to " +
                       FormatCost(effective.hard_factor));
    sampler.emplace(table, effective);
  }

  TrainResult result{InitModel(DeriveSeed(schedule.rng_seed, 0), hidden), {},
                     effective.hard_factor, std::move(warnings)};
  Rng rng(DeriveSeed(schedule.rng_seed, 1));
  AdamState adam;
  const size_t labeled = table.NumFinite();
  const size_t steps =
      std::max<size_t>(1, (labeled + effective.batch_size - 1) / effective.batch_size);
  for (int epoch = 0; epoch < effective.epochs_total; ++epoch) {
    double sum = 0.0;
    for (size_t step = 0; step < steps; ++step) {
      TripletBatch batch;
      for (int b = 0; b < effective.batch_size; ++b) {
        const TripletIds t = sampler->Sample(epoch, rng);
        batch.push_back({&graphs[t.anchor], &graphs[t.positive], &graphs[t.negative]});
      }
      sum += TrainStep(result.model, adam, batch, kTripletMargin, kLearningRate);
    }
    result.loss_curve.push_back(sum / steps);
  }
  return result;
}

std::string LossCurveToCsv(const std::vector<double>& loss_curve) {
  std::string out = CsvLine({"epoch", "mean_loss"});
  for (size_t e = 0; e < loss_curve.size(); ++e) {
    out += CsvLine({std::to_string(e), FormatCost(loss_curve[e])});
  }
  return out;
}

double SeparationFraction(const std::vector<Embedding>& embeddings,
                          const std::vector<TripletIds>& triplets) {
  if (triplets.empty()) return 0.0;
  size_t separated = 0;
  for (const TripletIds& t : triplets) {
    const double ap = SquaredDistance(embeddings[t.anchor], embeddings[t.positive]);
    const double an = SquaredDistance(embeddings[t.anchor], embeddings[t.negative]);
    if (ap < an) ++separated;
  }
  return static_cast<double>(separated) / triplets.size();
}

}  // namespace milpsim

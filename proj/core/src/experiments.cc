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

#include "milpsim/experiments.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "milpsim/branch_and_bound.h"
#include "milpsim/csv.h"
#include "milpsim/error.h"
#include "milpsim/mps.h"
#include "milpsim/parallel.h"
#include "milpsim/rng.h"

namespace milpsim {
namespace {

constexpr double kTieTolerance = 1e-9;
constexpr double kZ95 = 1.96;
constexpr int kHistogramBins = 20;

double Solve(const MilpInstance& instance, const SolverConfig& config, const Limits& limits,
             uint64_t seed) {
  return BranchAndBound(instance, config, limits, SolveSeed(seed))
      .best_cost;
}

bool UsableCostVector(const std::vector<double>& costs) {
  for (double c : costs) {
    if (!std::isfinite(c)) return false;
  }
  return std::adjacent_find(costs.begin(), costs.end(), std::not_equal_to<>()) !=
         costs.end();
}

double Mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / values.size();
}

// NaN marks an undefined statistic and is written as an empty field.
std::string Num(double value) { return std::isnan(value) ? "" : FormatCost(value); }

}  // namespace

double PearsonR(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pearson needs two equal-length vectors of at least 2 points");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kConstantInput, "pearson input is constant");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<SolverConfig> ExperimentConfigs(int count, uint64_t seed) {
  if (count < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 configurations");
  const ConfigSpace space = DefaultConfigSpace();
  std::vector<SolverConfig> configs = {space.default_config};
  for (int s = 1; s < count; ++s) {
    configs.push_back(SampleConfig(space, DeriveSeed(seed, 1000 + s)));
  }
  return configs;
}

double RelativeImprovement(double baseline, double cost) {
  const bool base_finite = std::isfinite(baseline);
  const bool cost_finite = std::isfinite(cost);
  if (!base_finite && !cost_finite) return 0.0;
  if (!base_finite) return 1.0;
  if (!cost_finite) return -1.0;
  return (baseline - cost) / std::max(std::abs(baseline), kTieTolerance);
}

CorrelationReport CorrelationExperiment(const std::vector<MilpInstance>& instances,
                                        const CostTable& table,
                                        const std::vector<SolverConfig>& configs,
                                        const CorrelationOptions& options) {
  if (configs.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least 2 configurations");
  }
  if (table.entries.size() != instances.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "cost table does not match instance list");
  }
  if (options.pairs < 1 || options.c_thr <= 0.0 || options.hard_factor <= 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid correlation options");
  }

  std::vector<size_t> labeled;
  for (size_t i = 0; i < instances.size(); ++i) {
    if (std::isfinite(table.entries[i].normalized_cost)) labeled.push_back(i);
  }
  std::vector<std::pair<size_t, size_t>> similar, dissimilar;
  for (size_t a = 0; a < labeled.size(); ++a) {
    for (size_t b = a + 1; b < labeled.size(); ++b) {
      const double gap = std::abs(table.entries[labeled[a]].normalized_cost -
                                  table.entries[labeled[b]].normalized_cost);
      if (gap <= options.c_thr) similar.emplace_back(labeled[a], labeled[b]);
      if (gap >= options.hard_factor * options.c_thr) {
        dissimilar.emplace_back(labeled[a], labeled[b]);
      }
    }
  }
  if (similar.size() < static_cast<size_t>(options.pairs) ||
      dissimilar.size() < static_cast<size_t>(options.pairs)) {
    throw Error(ErrorCode::kInsufficientPairs,
                "only " + std::to_string(similar.size()) + " similar and " +
                    std::to_string(dissimilar.size()) + " dissimilar candidate pairs");
  }

  CorrelationReport report;
  const size_t num_configs = configs.size();
  report.costs.assign(instances.size(), std::vector<double>(num_configs, kInfinity));
  std::vector<char> solved(instances.size(), 0);
  auto ensure_solved = [&](const std::vector<size_t>& ids) {
    std::vector<size_t> todo;
    for (size_t i : ids) {
      if (!solved[i]) {
        todo.push_back(i);
        solved[i] = 1;
      }
    }
    ParallelFor(todo.size() * num_configs, options.workers, [&](size_t task) {
      const size_t i = todo[task / num_configs];
      const size_t c = task % num_configs;
      report.costs[i][c] = Solve(instances[i], configs[c], options.limits, options.seed);
    });
  };

  Rng rng(DeriveSeed(options.seed, 2));
  auto run = [&](std::vector<std::pair<size_t, size_t>>& candidates, const char* kind,
                 int* skipped) {
    for (size_t i = candidates.size(); i > 1; --i) {
      std::swap(candidates[i - 1], candidates[rng.Index(i)]);
    }
    size_t next = 0;
    int taken = 0;
    while (taken < options.pairs) {
      const size_t remaining = candidates.size() - next;
      if (remaining == 0) {
        throw Error(ErrorCode::kInsufficientPairs,
                    std::string("ran out of usable ") + kind + " pairs after " +
                        std::to_string(taken));
      }
      // Solve a batch at once so the worker pool has something to do.
      const size_t batch = std::min(remaining, static_cast<size_t>(options.pairs - taken));
      std::vector<size_t> ids;
      for (size_t p = next; p < next + batch; ++p) {
        ids.push_back(candidates[p].first);
        ids.push_back(candidates[p].second);
      }
      ensure_solved(ids);
      for (size_t p = next; p < next + batch; ++p) {
        const auto [a, b] = candidates[p];
        if (!UsableCostVector(report.costs[a]) || !UsableCostVector(report.costs[b])) {
          ++*skipped;
          continue;
        }
        PairRow row;
        row.kind = kind;
        row.id_a = table.entries[a].instance_id;
        row.id_b = table.entries[b].instance_id;
        row.cost_gap =
            std::abs(table.entries[a].normalized_cost - table.entries[b].normalized_cost);
        row.r = PearsonR(report.costs[a], report.costs[b]);
        report.rows.push_back(std::move(row));
        ++taken;
      }
      next += batch;
    }
  };
  run(similar, "similar", &report.skipped_similar);
  run(dissimilar, "dissimilar", &report.skipped_dissimilar);

  std::vector<double> rs_similar, rs_dissimilar;
  for (const PairRow& row : report.rows) {
    (row.kind == "similar" ? rs_similar : rs_dissimilar).push_back(row.r);
  }
  report.mean_similar = Mean(rs_similar);
  report.mean_dissimilar = Mean(rs_dissimilar);
  return report;
}

std::string CorrelationToCsv(const CorrelationReport& report) {
  std::string out = CsvLine({"kind", "instance_a", "instance_b", "cost_gap", "pearson_r"});
  for (const PairRow& row : report.rows) {
    out += CsvLine({row.kind, row.id_a, row.id_b, Num(row.cost_gap), Num(row.r)});
  }
  return out;
}

std::string CorrelationHistogramCsv(const CorrelationReport& report) {
  std::array<int, kHistogramBins> similar{}, dissimilar{};
  for (const PairRow& row : report.rows) {
    const int bin = std::clamp(static_cast<int>(std::floor((row.r + 1.0) / 0.1)), 0,
                               kHistogramBins - 1);
    ++(row.kind == "similar" ? similar : dissimilar)[bin];
  }
  std::string out = CsvLine({"bin_lo", "bin_hi", "similar", "dissimilar"});
  for (int b = 0; b < kHistogramBins; ++b) {
    out += CsvLine({Num(-1.0 + 0.1 * b), Num(-1.0 + 0.1 * (b + 1)),
                    std::to_string(similar[b]), std::to_string(dissimilar[b])});
  }
  return out;
}

ShallowScaler ShallowScaler::Fit(const std::vector<ShallowFeatures>& features) {
  if (features.empty()) throw Error(ErrorCode::kInvalidArgument, "no features to fit");
  ShallowScaler scaler;
  scaler.lo = scaler.hi = features.front();
  for (const ShallowFeatures& f : features) {
    for (int d = 0; d < kShallowFeatureCount; ++d) {
      scaler.lo[d] = std::min(scaler.lo[d], f[d]);
      scaler.hi[d] = std::max(scaler.hi[d], f[d]);
    }
  }
  return scaler;
}

std::vector<double> ShallowScaler::Apply(const ShallowFeatures& features) const {
  std::vector<double> out(kShallowFeatureCount, 0.0);
  for (int d = 0; d < kShallowFeatureCount; ++d) {
    const double range = hi[d] - lo[d];
    if (range > 0.0) out[d] = (features[d] - lo[d]) / range;
  }
  return out;
}

std::string ShallowScaler::ToCsv() const {
  std::string out = CsvLine({"feature", "lo", "hi"});
  for (int d = 0; d < kShallowFeatureCount; ++d) {
    out += CsvLine({std::to_string(d), FormatDouble(lo[d]), FormatDouble(hi[d])});
  }
  return out;
}

ShallowScaler ShallowScaler::FromCsv(std::string_view text) {
  const std::vector<CsvRecord> records = ParseCsv(text);
  if (records.size() != kShallowFeatureCount + 1) {
    throw Error(ErrorCode::kMalformedFile, "scaler file needs 14 feature rows");
  }
  ShallowScaler scaler;
  for (int d = 0; d < kShallowFeatureCount; ++d) {
    const CsvRecord& r = records[d + 1];
    if (r.size() != 3 || r[0] != std::to_string(d) || !ParseDouble(r[1], &scaler.lo[d]) ||
        !ParseDouble(r[2], &scaler.hi[d])) {
      throw Error(ErrorCode::kMalformedFile, "bad scaler row " + std::to_string(d));
    }
  }
  return scaler;
}

CompareReport CompareBaselines(const std::vector<MilpInstance>& test,
                               const std::vector<Embedding>& deep_queries,
                               const std::vector<std::vector<double>>& shallow_queries,
                               const ConfigStore& deep_store, const ConfigStore& shallow_store,
                               const SolverConfig& incumbent, const CompareOptions& options) {
  const size_t count = test.size();
  if (count == 0) throw Error(ErrorCode::kMissingArtifacts, "no test instances");
  if (deep_queries.size() != count || shallow_queries.size() != count) {
    throw Error(ErrorCode::kDimensionMismatch, "query count does not match test set");
  }
  if (deep_store.size() == 0 || shallow_store.size() == 0) {
    throw Error(ErrorCode::kEmptyStore, "compare needs populated stores");
  }
  const SolverConfig default_config = DefaultConfigSpace().default_config;
  auto predict = [&](const ConfigStore& store, const std::vector<double>& query) {
    try {
      return store.PredictConfig(query, options.k, options.n).config;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoFiniteTrials) throw;
      return default_config;
    }
  };

  CompareReport report;
  report.costs.resize(count);
  report.configs.resize(count);
  std::vector<std::array<SolverConfig, kNumMethods>> chosen(count);
  for (size_t i = 0; i < count; ++i) {
    report.instance_ids.push_back(test[i].ContentHash());
    chosen[i] = {default_config, Canonicalize(incumbent), predict(shallow_store, shallow_queries[i]),
                 predict(deep_store, deep_queries[i])};
    for (int m = 0; m < kNumMethods; ++m) report.configs[i][m] = SerializeConfig(chosen[i][m]);
  }
  ParallelFor(count * kNumMethods, options.workers, [&](size_t task) {
    const size_t i = task / kNumMethods;
    const int m = static_cast<int>(task % kNumMethods);
    // Identical configs share one solve result by determinism; solving again
    // keeps the task layout simple.
    report.costs[i][m] = Solve(test[i], chosen[i][m], options.limits, options.seed);
  });

  std::array<std::vector<double>, kNumMethods> improvements;
  for (size_t i = 0; i < count; ++i) {
    const auto& costs = report.costs[i];
    const double best = *std::min_element(costs.begin(), costs.end());
    if (!std::isfinite(best)) {
      ++report.no_solution;
    } else {
      for (int m = 0; m < kNumMethods; ++m) {
        if (costs[m] <= best + kTieTolerance) ++report.wins[m];
      }
    }
    for (int m = 0; m < kNumMethods; ++m) {
      improvements[m].push_back(RelativeImprovement(costs[0], costs[m]));
    }
  }
  for (int m = 0; m < kNumMethods; ++m) {
    const double mean = Mean(improvements[m]);
    report.mean_improvement[m] = mean;
    if (count > 1) {
      double ss = 0.0;
      for (double v : improvements[m]) ss += (v - mean) * (v - mean);
      report.ci_half_width[m] = kZ95 * std::sqrt(ss / (count - 1)) / std::sqrt(double(count));
    }
  }
  return report;
}

std::string CompareToCsv(const CompareReport& report) {
  CsvRecord header = {"instance_id"};
  for (const char* name : kMethodNames) header.push_back(std::string(name) + "_cost");
  for (const char* name : kMethodNames) header.push_back(std::string(name) + "_config");
  std::string out = CsvLine(header);
  for (size_t i = 0; i < report.instance_ids.size(); ++i) {
    CsvRecord row = {report.instance_ids[i]};
    for (double c : report.costs[i]) row.push_back(FormatCost(c));
    for (const std::string& c : report.configs[i]) row.push_back(c);
    out += CsvLine(row);
  }
  return out;
}

std::string CompareSummaryCsv(const CompareReport& report) {
  std::string out = CsvLine({"method", "wins", "mean_improvement", "ci_half_width"});
  for (int m = 0; m < kNumMethods; ++m) {
    out += CsvLine({kMethodNames[m], std::to_string(report.wins[m]),
                    Num(report.mean_improvement[m]), Num(report.ci_half_width[m])});
  }
  out += CsvLine({"no_solution", std::to_string(report.no_solution), "", ""});
  return out;
}

CostScale CostScale::Fit(const CostTable& table) {
  CostScale scale{kInfinity, -kInfinity};
  for (const CostEntry& e : table.entries) {
    if (!std::isfinite(e.raw_cost)) continue;
    scale.lo = std::min(scale.lo, e.raw_cost);
    scale.hi = std::max(scale.hi, e.raw_cost);
  }
  if (!std::isfinite(scale.lo)) {
    throw Error(ErrorCode::kMissingArtifacts, "cost table has no finite entries");
  }
  return scale;
}

double CostScale::Apply(double raw) const {
  if (!std::isfinite(raw)) return raw;
  if (hi == lo) return 0.0;
  return (raw - lo) / (hi - lo) * kNormalizedCostMax;
}

AccuracyReport PredictionAccuracy(const std::vector<MilpInstance>& test,
                                  const std::vector<Embedding>& queries,
                                  const ConfigStore& store, const CostScale& scale, int k,
                                  int n, const Limits& limits, uint64_t seed, int workers) {
  if (queries.size() != test.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "query count does not match test set");
  }
  if (store.size() == 0) throw Error(ErrorCode::kEmptyStore, "accuracy needs a populated store");

  struct Cheapest {
    std::string id;
    SolverConfig config;
    double cost;
  };
  std::vector<Cheapest> finite_records;
  for (const ConfigRecord& record : store.Records()) {
    const Trial* best = nullptr;
    for (const Trial& t : record.trials) {
      if (std::isfinite(t.cost) && (!best || t.cost < best->cost)) best = &t;
    }
    if (best) finite_records.push_back({record.instance_id, best->config, best->cost});
  }
  if (finite_records.empty()) throw Error(ErrorCode::kNoFiniteTrials, "store has no finite trial");

  struct Pending {
    size_t test_index;
    Cheapest choice;
  };
  std::vector<Pending> knn, random;
  Rng rng(DeriveSeed(seed, 3));
  for (size_t i = 0; i < test.size(); ++i) {
    const Prediction p = store.PredictConfig(queries[i], k, n);
    knn.push_back({i, {p.instance_id, p.config, p.cost}});
    random.push_back({i, finite_records[rng.Index(finite_records.size())]});
  }

  auto evaluate = [&](const std::vector<Pending>& pending, std::vector<AccuracyRow>* rows) {
    rows->resize(pending.size());
    ParallelFor(pending.size(), workers, [&](size_t j) {
      const Pending& p = pending[j];
      const double actual = Solve(test[p.test_index], p.choice.config, limits, seed);
      (*rows)[j] = {test[p.test_index].ContentHash(), p.choice.id, SerializeConfig(p.choice.config),
                    scale.Apply(p.choice.cost), scale.Apply(actual)};
    });
  };

  AccuracyReport report;
  evaluate(knn, &report.rows);
  evaluate(random, &report.random_rows);

  auto mae = [](const std::vector<AccuracyRow>& rows, int* infinite) {
    std::vector<double> errors;
    for (const AccuracyRow& r : rows) {
      if (std::isfinite(r.actual)) {
        errors.push_back(std::abs(r.predicted - r.actual));
      } else {
        ++*infinite;
      }
    }
    return errors.empty() ? kInfinity : Mean(errors);
  };
  report.mae = mae(report.rows, &report.infinite_actual);
  report.random_mae = mae(report.random_rows, &report.random_infinite_actual);

  std::vector<double> predicted, actual;
  for (const AccuracyRow& r : report.rows) {
    if (!std::isfinite(r.actual)) continue;
    predicted.push_back(r.predicted);
    actual.push_back(r.actual);
  }
  try {
    report.pearson = PearsonR(predicted, actual);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kConstantInput && e.code() != ErrorCode::kDimensionMismatch) throw;
    report.pearson = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

std::string AccuracyToCsv(const AccuracyReport& report) {
  std::string out = CsvLine(
      {"method", "instance_id", "neighbor_id", "predicted_cost", "actual_cost", "config"});
  for (const auto& [method, rows] :
       {std::pair{"knn", &report.rows}, std::pair{"random", &report.random_rows}}) {
    for (const AccuracyRow& r : *rows) {
      out += CsvLine({method, r.instance_id, r.neighbor_id, Num(r.predicted), Num(r.actual),
                      r.config});
    }
  }
  return out;
}

std::string AccuracySummaryCsv(const AccuracyReport& report) {
  std::string out = CsvLine({"method", "mae", "pearson_r", "rows", "infinite_actual"});
  out += CsvLine({"knn", Num(report.mae), Num(report.pearson),
                  std::to_string(report.rows.size()), std::to_string(report.infinite_actual)});
  out += CsvLine({"random", Num(report.random_mae), "", std::to_string(report.random_rows.size()),
                  std::to_string(report.random_infinite_actual)});
  return out;
}

std::string EmbeddingsToCsv(const std::vector<std::string>& ids,
                            const std::vector<Embedding>& embeddings,
                            const std::vector<double>& costs) {
  if (ids.size() != embeddings.size() || (!costs.empty() && costs.size() != ids.size())) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding export lengths differ");
  }
  const size_t width = embeddings.empty() ? kEmbeddingWidth : embeddings.front().size();
  CsvRecord header = {"instance_id"};
  for (size_t d = 0; d < width; ++d) header.push_back("e" + std::to_string(d));
  header.push_back("cost");
  std::string out = CsvLine(header);
  for (size_t i = 0; i < ids.size(); ++i) {
    CsvRecord row = {ids[i]};
    for (double v : embeddings[i]) row.push_back(FormatDouble(v));
    row.push_back(costs.empty() ? "" : FormatCost(costs[i]));
    out += CsvLine(row);
  }
  return out;
}

}  // namespace milpsim

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

#include "milpsim/pipeline.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "milpsim/branch_and_bound.h"
#include "milpsim/checkpoint.h"
#include "milpsim/config_store.h"
#include "milpsim/csv.h"
#include "milpsim/encoder.h"
#include "milpsim/error.h"
#include "milpsim/experiments.h"
#include "milpsim/featurize.h"
#include "milpsim/mps.h"
#include "milpsim/parallel.h"
#include "milpsim/rng.h"

namespace milpsim {
namespace {

namespace fs = std::filesystem;

using Meta = std::vector<std::pair<std::string, std::string>>;

fs::path SetDir(const RunContext& ctx, const std::string& set) { return ctx.out_dir / set; }

void CheckSetName(const std::string& set) {
  if (set.empty() || set.find_first_of("/\\.") != std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "bad set name '" + set + "'");
  }
}

Limits NodeLimits(int64_t max_nodes) {
  if (max_nodes < 1) throw Error(ErrorCode::kInvalidArgument, "max-nodes must be >= 1");
  // Only the node limit binds, so results do not depend on machine load.
  return Limits{max_nodes, kInfinity};
}

std::string Str(double value) { return std::isnan(value) ? "undefined" : FormatCost(value); }

void WriteMeta(const RunContext& ctx, const std::string& command, Meta meta,
               Summary* summary) {
  meta.insert(meta.begin(), {{"command", command},
                             {"seed", std::to_string(ctx.seed)},
                             {"workers", std::to_string(ctx.workers)}});
  std::string text = CsvLine({"key", "value"});
  for (const auto& [key, value] : meta) text += CsvLine({key, value});
  const fs::path path = ctx.out_dir / (command + "_meta.csv");
  WriteTextFile(path, text);
  summary->outputs.push_back(path);
}

void Write(const fs::path& path, std::string_view text, Summary* summary) {
  WriteTextFile(path, text);
  summary->outputs.push_back(path);
}

fs::path RequireFile(const fs::path& path, const std::string& produced_by) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kMissingArtifacts,
                path.string() + " not found; run '" + produced_by + "' first");
  }
  return path;
}

std::vector<BipartiteGraph> Graphs(const std::vector<MilpInstance>& instances, int workers) {
  std::vector<BipartiteGraph> graphs(instances.size());
  ParallelFor(instances.size(), workers,
              [&](size_t i) { graphs[i] = ExtractBipartite(instances[i]); });
  return graphs;
}

std::vector<Embedding> Embed(const EncoderModel& model,
                             const std::vector<MilpInstance>& instances, int workers) {
  const std::vector<BipartiteGraph> graphs = Graphs(instances, workers);
  std::vector<Embedding> out(instances.size());
  ParallelFor(instances.size(), workers,
              [&](size_t i) { out[i] = ForwardEmbed(model, graphs[i]); });
  return out;
}

std::vector<std::string> Ids(const std::vector<MilpInstance>& instances) {
  std::vector<std::string> ids;
  for (const MilpInstance& instance : instances) ids.push_back(instance.name());
  return ids;
}

EncoderModel LoadTrainedModel(const RunContext& ctx) {
  return LoadModel(RequireFile(ctx.out_dir / "model.bin", "train"));
}

ConfigStore LoadStore(const RunContext& ctx, const std::string& file) {
  return ConfigStore::Load(RequireFile(ctx.out_dir / file, "embed"));
}

std::vector<std::string> CostRow(const std::string& label, const std::vector<double>& costs) {
  size_t finite = 0;
  double lo = kInfinity, hi = -kInfinity;
  for (double c : costs) {
    if (!std::isfinite(c)) continue;
    ++finite;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return {label, std::to_string(finite) + "/" + std::to_string(costs.size()),
          finite ? Str(lo) : "", finite ? Str(hi) : ""};
}

}  // namespace

std::string FormatSummary(const Summary& summary) {
  std::vector<size_t> width(summary.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  };
  widen(summary.header);
  for (const auto& row : summary.rows) widen(row);
  auto line = [&](const std::vector<std::string>& row) {
    std::string out;
    for (size_t c = 0; c < width.size(); ++c) {
      const std::string cell = c < row.size() ? row[c] : "";
      out += cell + std::string(width[c] - cell.size(), ' ');
      out += c + 1 < width.size() ? "  " : "";
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::string out = summary.title + "\n";
  if (!width.empty()) {
    out += line(summary.header);
    size_t total = 0;
    for (size_t w : width) total += w;
    out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
    for (const auto& row : summary.rows) out += line(row);
  }
  for (const fs::path& path : summary.outputs) out += "wrote " + path.string() + "\n";
  return out;
}

std::vector<MilpInstance> LoadSet(const RunContext& ctx, const std::string& set) {
  CheckSetName(set);
  const fs::path dir = SetDir(ctx, set);
  const std::vector<CsvRecord> rows =
      ParseCsv(ReadTextFile(RequireFile(dir / "instances.csv", "generate --set " + set)));
  if (rows.empty() || rows[0] != CsvRecord{"instance_id", "file", "family", "n", "m", "seed"}) {
    throw Error(ErrorCode::kMalformedFile, "bad manifest header in " + dir.string());
  }
  std::vector<MilpInstance> instances;
  for (size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 6) throw Error(ErrorCode::kMalformedFile, "bad manifest row");
    MilpInstance instance = ReadMpsFile(dir / rows[r][1]);
    if (instance.ContentHash() != rows[r][0]) {
      throw Error(ErrorCode::kMalformedFile, rows[r][1] + " does not match its id");
    }
    instances.push_back(instance.WithName(rows[r][0]));
  }
  if (instances.empty()) throw Error(ErrorCode::kMissingArtifacts, "set " + set + " is empty");
  return instances;
}

CostTable LoadCosts(const RunContext& ctx, const std::string& set) {
  CheckSetName(set);
  return CostTableFromCsv(
      ReadTextFile(RequireFile(SetDir(ctx, set) / "costs.csv", "label --set " + set)));
}

std::string SearchToCsv(const std::vector<std::string>& ids,
                        const std::vector<std::vector<Evaluation>>& results) {
  std::string out = CsvLine({"instance_id", "rank", "order", "cost", "config"});
  for (size_t i = 0; i < ids.size(); ++i) {
    for (size_t r = 0; r < results[i].size(); ++r) {
      const Evaluation& e = results[i][r];
      out += CsvLine({ids[i], std::to_string(r), std::to_string(e.order), FormatCost(e.cost),
                      SerializeConfig(e.config)});
    }
  }
  return out;
}

void SearchFromCsv(std::string_view text, std::vector<std::string>* ids,
                   std::vector<std::vector<Evaluation>>* results) {
  const std::vector<CsvRecord> rows = ParseCsv(text);
  if (rows.empty() || rows[0] != CsvRecord{"instance_id", "rank", "order", "cost", "config"}) {
    throw Error(ErrorCode::kMalformedFile, "bad search header");
  }
  ids->clear();
  results->clear();
  for (size_t r = 1; r < rows.size(); ++r) {
    const CsvRecord& row = rows[r];
    if (row.size() != 5) throw Error(ErrorCode::kMalformedFile, "bad search row");
    if (ids->empty() || ids->back() != row[0]) {
      ids->push_back(row[0]);
      results->emplace_back();
    }
    Evaluation e;
    double order = 0.0;
    if (!ParseDouble(row[2], &order)) throw Error(ErrorCode::kMalformedFile, "bad order");
    e.order = static_cast<int>(order);
    e.cost = ParseCost(row[3]);
    e.config = ParseConfig(row[4]);
    results->back().push_back(e);
  }
}

Summary RunGenerate(const RunContext& ctx, const GenerateOptions& options) {
  CheckSetName(options.set);
  if (options.count < 1) throw Error(ErrorCode::kInvalidArgument, "count must be >= 1");
  const fs::path dir = SetDir(ctx, options.set);
  if (fs::exists(dir / "mps")) fs::remove_all(dir / "mps");
  fs::create_directories(dir / "mps");
  const uint64_t set_seed = InstanceSeed(ctx.seed, options.set);

  std::string manifest = CsvLine({"instance_id", "file", "family", "n", "m", "seed"});
  std::set<std::string> seen;
  int64_t duplicates = 0;
  for (uint64_t stream = 0; static_cast<int>(seen.size()) < options.count; ++stream) {
    const uint64_t seed = DeriveSeed(set_seed, stream);
    const MilpInstance generated =
        GenerateInstance(options.family, options.n, options.m, seed).instance;
    const std::string id = generated.ContentHash();
    if (!seen.insert(id).second) {
      ++duplicates;
      continue;
    }
    const std::string file = "mps/" + id + ".mps";
    WriteMpsFile(generated.WithName(id), dir / file);
    manifest += CsvLine({id, file, std::string(FamilyName(options.family)),
                         std::to_string(options.n), std::to_string(options.m),
                         std::to_string(seed)});
  }

  Summary summary;
  summary.title = "generate";
  summary.header = {"set", "family", "n", "m", "instances", "duplicates_skipped"};
  summary.rows.push_back({options.set, std::string(FamilyName(options.family)),
                          std::to_string(options.n), std::to_string(options.m),
                          std::to_string(options.count), std::to_string(duplicates)});
  Write(dir / "instances.csv", manifest, &summary);
  WriteMeta(ctx, "generate",
            {{"set", options.set},
             {"family", std::string(FamilyName(options.family))},
             {"n", std::to_string(options.n)},
             {"m", std::to_string(options.m)},
             {"count", std::to_string(options.count)}},
            &summary);
  return summary;
}

Summary RunLabel(const RunContext& ctx, const LabelOptions& options) {
  const std::vector<MilpInstance> instances = LoadSet(ctx, options.set);
  const CostTable table =
      LabelCosts(instances, NodeLimits(options.max_nodes), ctx.seed, ctx.workers);
  std::vector<double> raw;
  for (const CostEntry& e : table.entries) raw.push_back(e.raw_cost);

  Summary summary;
  summary.title = "label";
  summary.header = {"set", "finite", "min_cost", "max_cost"};
  summary.rows.push_back(CostRow(options.set, raw));
  Write(SetDir(ctx, options.set) / "costs.csv", CostTableToCsv(table), &summary);
  WriteMeta(ctx, "label",
            {{"set", options.set}, {"max_nodes", std::to_string(options.max_nodes)}},
            &summary);
  return summary;
}

Summary RunTrain(const RunContext& ctx, const TrainOptions& options) {
  const std::vector<MilpInstance> instances = LoadSet(ctx, options.set);
  const CostTable table = LoadCosts(ctx, options.set);
  if (table.entries.size() != instances.size()) {
    throw Error(ErrorCode::kMalformedFile, "costs.csv does not match the instance set");
  }
  for (size_t i = 0; i < instances.size(); ++i) {
    if (table.entries[i].instance_id != instances[i].name()) {
      throw Error(ErrorCode::kMalformedFile, "costs.csv does not match the instance set");
    }
  }
  SamplingSchedule schedule = options.schedule;
  schedule.rng_seed = ctx.seed;
  const TrainResult result =
      TrainMetricModel(Graphs(instances, ctx.workers), table, schedule, options.hidden);

  Summary summary;
  summary.title = "train";
  summary.header = {"epochs", "first_loss", "final_loss", "hard_factor"};
  summary.rows.push_back({std::to_string(result.loss_curve.size()),
                          Str(result.loss_curve.front()), Str(result.loss_curve.back()),
                          Str(result.hard_factor_used)});
  for (const std::string& warning : result.warnings) summary.rows.push_back({"warning: " + warning});
  SaveModel(result.model, ctx.out_dir / "model.bin");
  summary.outputs.push_back(ctx.out_dir / "model.bin");
  Write(ctx.out_dir / "loss_curve.csv", LossCurveToCsv(result.loss_curve), &summary);
  WriteMeta(ctx, "train",
            {{"set", options.set},
             {"hidden", std::to_string(options.hidden)},
             {"c_thr", Str(schedule.c_thr)},
             {"hard_factor", Str(schedule.hard_factor)},
             {"hard_factor_used", Str(result.hard_factor_used)},
             {"epochs_hard", std::to_string(schedule.epochs_hard)},
             {"epochs_total", std::to_string(schedule.epochs_total)},
             {"batch_size", std::to_string(schedule.batch_size)}},
            &summary);
  return summary;
}

Summary RunTune(const RunContext& ctx, const TuneOptions& options) {
  const std::vector<MilpInstance> instances = LoadSet(ctx, options.set);
  SearchBudget budget;
  budget.evaluations = options.evaluations;
  budget.per_eval_limits = NodeLimits(options.max_nodes);
  budget.seed = ctx.seed;
  const std::vector<std::vector<Evaluation>> results =
      SearchAll(instances, DefaultConfigSpace(), budget, ctx.workers);

  std::vector<double> defaults, best;
  int64_t improved = 0;
  for (const auto& evaluations : results) {
    const auto def = std::find_if(evaluations.begin(), evaluations.end(),
                                  [](const Evaluation& e) { return e.order == 0; });
    defaults.push_back(def->cost);
    best.push_back(evaluations.front().cost);
    if (evaluations.front().cost < def->cost) ++improved;
  }
  Summary summary;
  summary.title = "tune";
  summary.header = {"costs", "finite", "min_cost", "max_cost"};
  summary.rows.push_back(CostRow("default", defaults));
  summary.rows.push_back(CostRow("best_found", best));
  summary.rows.push_back({"improved_instances", std::to_string(improved)});
  Write(SetDir(ctx, options.set) / "search.csv", SearchToCsv(Ids(instances), results),
        &summary);
  WriteMeta(ctx, "tune",
            {{"set", options.set},
             {"evaluations", std::to_string(options.evaluations)},
             {"max_nodes", std::to_string(options.max_nodes)}},
            &summary);
  return summary;
}

Summary RunEmbed(const RunContext& ctx, const EmbedOptions& options) {
  const std::vector<MilpInstance> instances = LoadSet(ctx, options.set);
  const EncoderModel model = LoadTrainedModel(ctx);
  const std::vector<Embedding> embeddings = Embed(model, instances, ctx.workers);
  std::vector<ShallowFeatures> shallow(instances.size());
  ParallelFor(instances.size(), ctx.workers,
              [&](size_t i) { shallow[i] = ComputeShallowFeatures(instances[i]); });
  const std::vector<std::string> ids = Ids(instances);

  Summary summary;
  summary.title = "embed";
  summary.header = {"set", "instances", "store_records", "store_trials"};
  const fs::path dir = SetDir(ctx, options.set);
  Write(dir / "embeddings.csv", EmbeddingsToCsv(ids, embeddings, {}), &summary);
  std::string shallow_csv;
  {
    CsvRecord header = {"instance_id"};
    for (int d = 0; d < kShallowFeatureCount; ++d) header.push_back("f" + std::to_string(d));
    shallow_csv = CsvLine(header);
    for (size_t i = 0; i < ids.size(); ++i) {
      CsvRecord row = {ids[i]};
      for (double v : shallow[i]) row.push_back(FormatDouble(v));
      shallow_csv += CsvLine(row);
    }
  }
  Write(dir / "shallow.csv", shallow_csv, &summary);

  std::string records = "0", trials = "0";
  if (fs::exists(dir / "search.csv")) {
    std::vector<std::string> search_ids;
    std::vector<std::vector<Evaluation>> results;
    SearchFromCsv(ReadTextFile(dir / "search.csv"), &search_ids, &results);
    std::unordered_map<std::string, size_t> position;
    for (size_t i = 0; i < ids.size(); ++i) position[ids[i]] = i;

    const ShallowScaler scaler = ShallowScaler::Fit(shallow);
    ConfigStore deep(kEmbeddingWidth), shallow_store(kShallowFeatureCount);
    size_t trial_count = 0;
    for (size_t s = 0; s < search_ids.size(); ++s) {
      const auto it = position.find(search_ids[s]);
      if (it == position.end()) {
        throw Error(ErrorCode::kMalformedFile, "search.csv names an unknown instance");
      }
      std::vector<Evaluation> by_order = results[s];
      std::sort(by_order.begin(), by_order.end(),
                [](const Evaluation& a, const Evaluation& b) { return a.order < b.order; });
      const std::vector<double> scaled = scaler.Apply(shallow[it->second]);
      for (const Evaluation& e : by_order) {
        const TrialSource source = e.order == 0 ? TrialSource::kDefault : TrialSource::kSearch;
        deep.InsertTrial(search_ids[s], embeddings[it->second], e.config, e.cost, source);
        shallow_store.InsertTrial(search_ids[s], scaled, e.config, e.cost, source);
        ++trial_count;
      }
    }
    deep.Save(ctx.out_dir / "store.log");
    summary.outputs.push_back(ctx.out_dir / "store.log");
    shallow_store.Save(ctx.out_dir / "shallow_store.log");
    summary.outputs.push_back(ctx.out_dir / "shallow_store.log");
    Write(ctx.out_dir / "shallow_scale.csv", scaler.ToCsv(), &summary);
    records = std::to_string(deep.size());
    trials = std::to_string(trial_count);
  }
  summary.rows.push_back({options.set, std::to_string(ids.size()), records, trials});
  WriteMeta(ctx, "embed", {{"set", options.set}}, &summary);
  return summary;
}

Summary RunPredict(const RunContext& ctx, const PredictOptions& options) {
  const std::vector<MilpInstance> instances = LoadSet(ctx, options.set);
  const EncoderModel model = LoadTrainedModel(ctx);
  ConfigStore store = LoadStore(ctx, "store.log");
  const std::vector<Embedding> embeddings = Embed(model, instances, ctx.workers);

  std::vector<Prediction> predictions;
  for (const Embedding& e : embeddings) {
    predictions.push_back(store.PredictConfig(e, options.k, options.n));
  }
  std::vector<double> solved(instances.size(), kInfinity);
  if (options.feedback) {
    const Limits limits = NodeLimits(options.max_nodes);
    ParallelFor(instances.size(), ctx.workers, [&](size_t i) {
      solved[i] = BranchAndBound(instances[i], predictions[i].config, limits,
                                 SolveSeed(ctx.seed))
                      .best_cost;
    });
    for (size_t i = 0; i < instances.size(); ++i) {
      store.InsertTrial(instances[i].name(), embeddings[i], predictions[i].config, solved[i],
                        TrialSource::kDeployment);
    }
    store.Flush(ctx.out_dir / "store.log");
  }

  CsvRecord header = {"instance_id", "neighbor_id", "distance", "stored_cost", "config"};
  if (options.feedback) header.push_back("solved_cost");
  std::string csv = CsvLine(header);
  for (size_t i = 0; i < instances.size(); ++i) {
    const Prediction& p = predictions[i];
    CsvRecord row = {instances[i].name(), p.instance_id, FormatDouble(p.distance),
                     FormatCost(p.cost), SerializeConfig(p.config)};
    if (options.feedback) row.push_back(FormatCost(solved[i]));
    csv += CsvLine(row);
  }
  Summary summary;
  summary.title = "predict";
  summary.header = {"set", "predictions", "k", "n", "feedback"};
  summary.rows.push_back({options.set, std::to_string(instances.size()),
                          std::to_string(options.k), std::to_string(options.n),
                          options.feedback ? "yes" : "no"});
  Write(SetDir(ctx, options.set) / "predictions.csv", csv, &summary);
  if (options.feedback) summary.outputs.push_back(ctx.out_dir / "store.log");
  WriteMeta(ctx, "predict",
            {{"set", options.set},
             {"k", std::to_string(options.k)},
             {"n", std::to_string(options.n)},
             {"feedback", options.feedback ? "1" : "0"},
             {"max_nodes", std::to_string(options.max_nodes)}},
            &summary);
  return summary;
}

Summary RunValidateCorrelation(const RunContext& ctx,
                               const CorrelationCommandOptions& options) {
  const std::vector<MilpInstance> instances = LoadSet(ctx, options.set);
  const CostTable table = LoadCosts(ctx, options.set);
  CorrelationOptions correlation;
  correlation.pairs = options.pairs;
  correlation.c_thr = options.c_thr;
  correlation.hard_factor = options.hard_factor;
  correlation.limits = NodeLimits(options.max_nodes);
  correlation.seed = ctx.seed;
  correlation.workers = ctx.workers;
  const CorrelationReport report = CorrelationExperiment(
      instances, table, ExperimentConfigs(options.configs, ctx.seed), correlation);

  Summary summary;
  summary.title = "validate-correlation";
  summary.header = {"kind", "pairs", "mean_r", "skipped"};
  summary.rows.push_back({"similar", std::to_string(options.pairs), Str(report.mean_similar),
                          std::to_string(report.skipped_similar)});
  summary.rows.push_back({"dissimilar", std::to_string(options.pairs),
                          Str(report.mean_dissimilar),
                          std::to_string(report.skipped_dissimilar)});
  Write(ctx.out_dir / "correlation.csv", CorrelationToCsv(report), &summary);
  Write(ctx.out_dir / "correlation_histogram.csv", CorrelationHistogramCsv(report), &summary);
  WriteMeta(ctx, "validate-correlation",
            {{"set", options.set},
             {"pairs", std::to_string(options.pairs)},
             {"configs", std::to_string(options.configs)},
             {"c_thr", Str(options.c_thr)},
             {"hard_factor", Str(options.hard_factor)},
             {"max_nodes", std::to_string(options.max_nodes)}},
            &summary);
  return summary;
}

Summary RunAccuracy(const RunContext& ctx, const AccuracyOptions& options) {
  const std::vector<MilpInstance> instances = LoadSet(ctx, options.set);
  const EncoderModel model = LoadTrainedModel(ctx);
  const ConfigStore store = LoadStore(ctx, "store.log");
  const CostScale scale = CostScale::Fit(LoadCosts(ctx, options.train_set));
  const AccuracyReport report =
      PredictionAccuracy(instances, Embed(model, instances, ctx.workers), store, scale,
                         options.k, options.n, NodeLimits(options.max_nodes), ctx.seed,
                         ctx.workers);

  Summary summary;
  summary.title = "accuracy";
  summary.header = {"method", "mae", "pearson_r", "rows", "infinite_actual"};
  summary.rows.push_back({"knn", Str(report.mae), Str(report.pearson),
                          std::to_string(report.rows.size()),
                          std::to_string(report.infinite_actual)});
  summary.rows.push_back({"random", Str(report.random_mae), "",
                          std::to_string(report.random_rows.size()),
                          std::to_string(report.random_infinite_actual)});
  Write(ctx.out_dir / "accuracy.csv", AccuracyToCsv(report), &summary);
  Write(ctx.out_dir / "accuracy_summary.csv", AccuracySummaryCsv(report), &summary);
  WriteMeta(ctx, "accuracy",
            {{"set", options.set},
             {"train_set", options.train_set},
             {"k", std::to_string(options.k)},
             {"n", std::to_string(options.n)},
             {"scale_lo", Str(scale.lo)},
             {"scale_hi", Str(scale.hi)},
             {"max_nodes", std::to_string(options.max_nodes)}},
            &summary);
  return summary;
}

Summary RunCompare(const RunContext& ctx, const CompareCommandOptions& options) {
  const std::vector<MilpInstance> instances = LoadSet(ctx, options.set);
  const EncoderModel model = LoadTrainedModel(ctx);
  const ConfigStore deep = LoadStore(ctx, "store.log");
  const ConfigStore shallow = LoadStore(ctx, "shallow_store.log");
  const ShallowScaler scaler = ShallowScaler::FromCsv(
      ReadTextFile(RequireFile(ctx.out_dir / "shallow_scale.csv", "embed")));
  std::vector<std::string> search_ids;
  std::vector<std::vector<Evaluation>> results;
  SearchFromCsv(ReadTextFile(RequireFile(SetDir(ctx, options.train_set) / "search.csv",
                                         "tune --set " + options.train_set)),
                &search_ids, &results);
  const SolverConfig incumbent = IncumbentConfig(results);

  std::vector<std::vector<double>> shallow_queries(instances.size());
  ParallelFor(instances.size(), ctx.workers, [&](size_t i) {
    shallow_queries[i] = scaler.Apply(ComputeShallowFeatures(instances[i]));
  });
  CompareOptions compare;
  compare.k = options.k;
  compare.n = options.n;
  compare.limits = NodeLimits(options.max_nodes);
  compare.seed = ctx.seed;
  compare.workers = ctx.workers;
  const CompareReport report =
      CompareBaselines(instances, Embed(model, instances, ctx.workers), shallow_queries, deep,
                       shallow, incumbent, compare);

  Summary summary;
  summary.title = "compare";
  summary.header = {"method", "wins", "mean_improvement", "ci_half_width"};
  for (int m = 0; m < kNumMethods; ++m) {
    summary.rows.push_back({kMethodNames[m], std::to_string(report.wins[m]),
                            Str(report.mean_improvement[m]), Str(report.ci_half_width[m])});
  }
  summary.rows.push_back({"no_solution", std::to_string(report.no_solution), "", ""});
  Write(ctx.out_dir / "compare.csv", CompareToCsv(report), &summary);
  Write(ctx.out_dir / "compare_summary.csv", CompareSummaryCsv(report), &summary);
  WriteMeta(ctx, "compare",
            {{"set", options.set},
             {"train_set", options.train_set},
             {"k", std::to_string(options.k)},
             {"n", std::to_string(options.n)},
             {"incumbent", SerializeConfig(incumbent)},
             {"max_nodes", std::to_string(options.max_nodes)}},
            &summary);
  return summary;
}

Summary RunExportEmbeddings(const RunContext& ctx, const ExportOptions& options) {
  const std::vector<MilpInstance> instances = LoadSet(ctx, options.set);
  const EncoderModel model = LoadTrainedModel(ctx);
  std::vector<double> costs;
  if (fs::exists(SetDir(ctx, options.set) / "costs.csv")) {
    const CostTable table = LoadCosts(ctx, options.set);
    for (const MilpInstance& instance : instances) {
      const auto index = table.Find(instance.name());
      costs.push_back(index ? table.entries[*index].normalized_cost : kInfinity);
    }
  }
  Summary summary;
  summary.title = "export-embeddings";
  summary.header = {"set", "instances", "with_costs"};
  summary.rows.push_back(
      {options.set, std::to_string(instances.size()), costs.empty() ? "no" : "yes"});
  Write(SetDir(ctx, options.set) / "export.csv",
        EmbeddingsToCsv(Ids(instances), Embed(model, instances, ctx.workers), costs), &summary);
  WriteMeta(ctx, "export-embeddings", {{"set", options.set}}, &summary);
  return summary;
}

}  // namespace milpsim

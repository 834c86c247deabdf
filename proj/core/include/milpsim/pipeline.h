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

#ifndef MILPSIM_PIPELINE_H_
#define MILPSIM_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "milpsim/generate.h"
#include "milpsim/metric_train.h"
#include "milpsim/milp.h"
#include "milpsim/solver_config.h"
#include "milpsim/tuner.h"

namespace milpsim {

// Workspace layout under out_dir:
//
//   <set>/instances.csv      manifest: instance_id, file, family, n, m, seed
//   <set>/mps/<id>.mps       one file per instance
//   <set>/costs.csv          default-config costs (label)
//   <set>/search.csv         tuner evaluations (tune)
//   <set>/embeddings.csv     deep embeddings (embed)
//   <set>/shallow.csv        raw shallow features (embed)
//   <set>/predictions.csv    predicted configs (predict)
//   <set>/export.csv         embeddings with costs (export-embeddings)
//   model.bin, loss_curve.csv                       (train)
//   store.log, shallow_store.log, shallow_scale.csv (embed on a tuned set)
//   correlation.csv, correlation_histogram.csv      (validate-correlation)
//   accuracy.csv, accuracy_summary.csv              (accuracy)
//   compare.csv, compare_summary.csv                (compare)
//   <command>_meta.csv       seeds and budgets of the last run of a command
//
// Instance ids are content hashes, so the solve seed of an instance is the
// same in every command.
struct RunContext {
  std::filesystem::path out_dir = "out";
  uint64_t seed = 0;
  int workers = 1;
};

// Tabular result of one command, printed by the CLI.
struct Summary {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::filesystem::path> outputs;
};

std::string FormatSummary(const Summary& summary);

inline constexpr int64_t kDefaultMaxNodes = 60;

struct GenerateOptions {
  std::string set = "train";
  Family family = Family::kPlacement;
  int n = 80;
  int m = 32;
  int count = 200;
};

struct LabelOptions {
  std::string set = "train";
  int64_t max_nodes = kDefaultMaxNodes;
};

struct TrainOptions {
  std::string set = "train";
  SamplingSchedule schedule;  // rng_seed is taken from the context
  int hidden = 64;
};

struct TuneOptions {
  std::string set = "train";
  int evaluations = 20;
  int64_t max_nodes = kDefaultMaxNodes;
};

struct EmbedOptions {
  std::string set = "train";
};

struct PredictOptions {
  std::string set = "test";
  int k = 1;
  int n = 1;
  // Solve each instance with its predicted config and append the result to
  // the store as a deployment trial.
  bool feedback = false;
  int64_t max_nodes = kDefaultMaxNodes;
};

struct CorrelationCommandOptions {
  std::string set = "train";
  int pairs = 50;
  int configs = 8;
  double c_thr = 1.0;
  double hard_factor = 10.0;
  int64_t max_nodes = kDefaultMaxNodes;
};

struct AccuracyOptions {
  std::string set = "test";
  std::string train_set = "train";
  int k = 1;
  int n = 1;
  int64_t max_nodes = kDefaultMaxNodes;
};

struct CompareCommandOptions {
  std::string set = "test";
  std::string train_set = "train";
  int k = 1;
  int n = 1;
  int64_t max_nodes = kDefaultMaxNodes;
};

struct ExportOptions {
  std::string set = "train";
};

Summary RunGenerate(const RunContext& ctx, const GenerateOptions& options);
Summary RunLabel(const RunContext& ctx, const LabelOptions& options);
Summary RunTrain(const RunContext& ctx, const TrainOptions& options);
Summary RunTune(const RunContext& ctx, const TuneOptions& options);
Summary RunEmbed(const RunContext& ctx, const EmbedOptions& options);
Summary RunPredict(const RunContext& ctx, const PredictOptions& options);
Summary RunValidateCorrelation(const RunContext& ctx, const CorrelationCommandOptions& options);
Summary RunAccuracy(const RunContext& ctx, const AccuracyOptions& options);
Summary RunCompare(const RunContext& ctx, const CompareCommandOptions& options);
Summary RunExportEmbeddings(const RunContext& ctx, const ExportOptions& options);

// Loads the instances of a set in manifest order. Throws
// Error(kMissingArtifacts) if the set was not generated and
// Error(kMalformedFile) if a file no longer matches its id.
std::vector<MilpInstance> LoadSet(const RunContext& ctx, const std::string& set);
CostTable LoadCosts(const RunContext& ctx, const std::string& set);

// instance_id, rank, order, cost, config; rows grouped by instance and
// sorted by cost within an instance.
std::string SearchToCsv(const std::vector<std::string>& ids,
                        const std::vector<std::vector<Evaluation>>& results);
void SearchFromCsv(std::string_view text, std::vector<std::string>* ids,
                   std::vector<std::vector<Evaluation>>* results);

}  // namespace milpsim

#endif  // MILPSIM_PIPELINE_H_

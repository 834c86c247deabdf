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

// milpsim command-line entry point.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "milpsim/error.h"
#include "milpsim/generate.h"
#include "milpsim/pipeline.h"

namespace {

using milpsim::Error;
using milpsim::ErrorCode;

// Exit codes: 0 success, 2 usage error, 3 named library error, 4 other failure.
constexpr int kExitLibraryError = 3;
constexpr int kExitInternal = 4;

void AddSet(CLI::App* cmd, std::string* set) {
  cmd->add_option("--set", *set, "Instance set name")->capture_default_str();
}

void AddMaxNodes(CLI::App* cmd, int64_t* max_nodes) {
  cmd->add_option("--max-nodes", *max_nodes, "Branch-and-bound node limit per solve")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity-based MILP solver configuration"};
  app.require_subcommand(1);

  milpsim::RunContext ctx;
  std::string out_dir = ctx.out_dir.string();
  app.add_option("--seed", ctx.seed, "Global random seed")->capture_default_str();
  app.add_option("--workers", ctx.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out-dir", out_dir, "Workspace directory")->capture_default_str();

  std::function<milpsim::Summary()> run;

  milpsim::GenerateOptions generate;
  std::string family = "PLACEMENT";
  auto* cmd = app.add_subcommand("generate", "Generate a seeded instance set");
  AddSet(cmd, &generate.set);
  cmd->add_option("--family", family, "PLACEMENT, COVER or KNAPSACK_MULTI")
      ->capture_default_str();
  cmd->add_option("--n", generate.n, "Variables")->capture_default_str();
  cmd->add_option("--m", generate.m, "Constraints")->capture_default_str();
  cmd->add_option("--count", generate.count, "Instances")->capture_default_str();
  cmd->callback([&] {
    run = [&] {
      const auto parsed = milpsim::ParseFamily(family);
      if (!parsed) throw Error(ErrorCode::kInvalidArgument, "unknown family " + family);
      generate.family = *parsed;
      return milpsim::RunGenerate(ctx, generate);
    };
  });

  milpsim::LabelOptions label;
  cmd = app.add_subcommand("label", "Solve each instance with the default config");
  AddSet(cmd, &label.set);
  AddMaxNodes(cmd, &label.max_nodes);
  cmd->callback([&] { run = [&] { return milpsim::RunLabel(ctx, label); }; });

  milpsim::TrainOptions train;
  cmd = app.add_subcommand("train", "Train the metric encoder on a labeled set");
  AddSet(cmd, &train.set);
  cmd->add_option("--epochs", train.schedule.epochs_total, "Total epochs")
      ->capture_default_str();
  cmd->add_option("--hard-epochs", train.schedule.epochs_hard, "Epochs of hard sampling")
      ->capture_default_str();
  cmd->add_option("--batch-size", train.schedule.batch_size, "Triplets per step")
      ->capture_default_str();
  cmd->add_option("--c-thr", train.schedule.c_thr, "Positive cost threshold")
      ->capture_default_str();
  cmd->add_option("--hard-factor", train.schedule.hard_factor, "Hard negative factor")
      ->capture_default_str();
  cmd->add_option("--hidden", train.hidden, "Hidden width")->capture_default_str();
  cmd->callback([&] { run = [&] { return milpsim::RunTrain(ctx, train); }; });

  milpsim::TuneOptions tune;
  cmd = app.add_subcommand("tune", "Search configurations per instance");
  AddSet(cmd, &tune.set);
  cmd->add_option("--evaluations", tune.evaluations, "Solver runs per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  AddMaxNodes(cmd, &tune.max_nodes);
  cmd->callback([&] { run = [&] { return milpsim::RunTune(ctx, tune); }; });

  milpsim::EmbedOptions embed;
  cmd = app.add_subcommand("embed", "Embed a set; register its search results in the stores");
  AddSet(cmd, &embed.set);
  cmd->callback([&] { run = [&] { return milpsim::RunEmbed(ctx, embed); }; });

  milpsim::PredictOptions predict;
  cmd = app.add_subcommand("predict", "Predict a configuration for each instance of a set");
  AddSet(cmd, &predict.set);
  cmd->add_option("--k", predict.k, "Neighbors")->capture_default_str();
  cmd->add_option("--n", predict.n, "Configs per neighbor")->capture_default_str();
  cmd->add_flag("--feedback", predict.feedback,
                "Solve with the prediction and append the result to the store");
  AddMaxNodes(cmd, &predict.max_nodes);
  cmd->callback([&] { run = [&] { return milpsim::RunPredict(ctx, predict); }; });

  milpsim::CorrelationCommandOptions correlation;
  cmd = app.add_subcommand("validate-correlation",
                           "Cost correlation of similar and dissimilar pairs");
  AddSet(cmd, &correlation.set);
  cmd->add_option("--pairs", correlation.pairs, "Pairs per kind")->capture_default_str();
  cmd->add_option("--configs", correlation.configs, "Configurations")->capture_default_str();
  cmd->add_option("--c-thr", correlation.c_thr, "Similarity threshold")
      ->capture_default_str();
  cmd->add_option("--hard-factor", correlation.hard_factor, "Dissimilarity factor")
      ->capture_default_str();
  AddMaxNodes(cmd, &correlation.max_nodes);
  cmd->callback(
      [&] { run = [&] { return milpsim::RunValidateCorrelation(ctx, correlation); }; });

  milpsim::AccuracyOptions accuracy;
  cmd = app.add_subcommand("accuracy", "Predicted versus actual cost on a test set");
  AddSet(cmd, &accuracy.set);
  cmd->add_option("--train-set", accuracy.train_set, "Set defining the cost scale")
      ->capture_default_str();
  cmd->add_option("--k", accuracy.k, "Neighbors")->capture_default_str();
  cmd->add_option("--n", accuracy.n, "Configs per neighbor")->capture_default_str();
  AddMaxNodes(cmd, &accuracy.max_nodes);
  cmd->callback([&] { run = [&] { return milpsim::RunAccuracy(ctx, accuracy); }; });

  milpsim::CompareCommandOptions compare;
  cmd = app.add_subcommand("compare", "Compare default, incumbent, shallow and deep KNN");
  AddSet(cmd, &compare.set);
  cmd->add_option("--train-set", compare.train_set, "Tuned set providing the incumbent")
      ->capture_default_str();
  cmd->add_option("--k", compare.k, "Neighbors")->capture_default_str();
  cmd->add_option("--n", compare.n, "Configs per neighbor")->capture_default_str();
  AddMaxNodes(cmd, &compare.max_nodes);
  cmd->callback([&] { run = [&] { return milpsim::RunCompare(ctx, compare); }; });

  milpsim::ExportOptions export_options;
  cmd = app.add_subcommand("export-embeddings", "Write embeddings with normalized costs");
  AddSet(cmd, &export_options.set);
  cmd->callback(
      [&] { run = [&] { return milpsim::RunExportEmbeddings(ctx, export_options); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  ctx.out_dir = out_dir;

  try {
    std::cout << milpsim::FormatSummary(run());
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLibraryError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: IoError: " << e.what() << "\n";
    return kExitLibraryError;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return kExitInternal;
  }
}

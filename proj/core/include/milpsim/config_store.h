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

#ifndef MILPSIM_CONFIG_STORE_H_
#define MILPSIM_CONFIG_STORE_H_

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "milpsim/encoder.h"
#include "milpsim/solver_config.h"

namespace milpsim {

enum class TrialSource : uint8_t { kDefault, kSearch, kDeployment };

std::string_view TrialSourceName(TrialSource source);
std::optional<TrialSource> ParseTrialSource(std::string_view name);

struct Trial {
  SolverConfig config;
  double cost = 0.0;  // +inf when the solve found nothing
  TrialSource source = TrialSource::kDefault;

  friend bool operator==(const Trial&, const Trial&) = default;
};

struct ConfigRecord {
  std::string instance_id;
  std::vector<double> embedding;
  std::vector<Trial> trials;  // insertion order

  friend bool operator==(const ConfigRecord&, const ConfigRecord&) = default;
};

struct Neighbor {
  std::string instance_id;
  double distance = 0.0;
};

struct Prediction {
  SolverConfig config;
  std::string instance_id;  // neighbor the config came from
  double cost = 0.0;        // its stored cost
  double distance = 0.0;
  size_t trial_index = 0;
};

// Records of (embedding, explored configurations, costs) keyed by instance
// id. Queries take a shared lock and writes an exclusive one, so any number
// of readers can run beside a single writer.
//
// Log format, one line per event:
//   milpsim-store v1 dimension=<d>
//   record instance_id=<id> embedding=<v1>,<v2>,...,<vd>
//   trial instance_id=<id> source=<DEFAULT|SEARCH|DEPLOYMENT> cost=<c|inf> <config>
// where <config> is the SolverConfig record. A record line precedes the trials
// of its instance. Embedding values carry 17 significant digits.
class ConfigStore {
 public:
  explicit ConfigStore(int dimension = kEmbeddingWidth);
  ConfigStore(const ConfigStore& other);
  ConfigStore& operator=(const ConfigStore& other);

  int dimension() const { return dimension_; }
  size_t size() const;
  std::vector<ConfigRecord> Records() const;
  std::optional<ConfigRecord> Get(const std::string& instance_id) const;

  // Creates the record on first use, then appends the trial. Throws
  // Error(kDimensionMismatch) on a wrong embedding length and
  // Error(kEmbeddingMismatch) if the record exists with another embedding.
  void InsertTrial(const std::string& instance_id, const std::vector<double>& embedding,
                   const SolverConfig& config, double cost, TrialSource source);

  // Exact Euclidean neighbors in non-descending distance, ties by instance
  // id. Returns every record when fewer than k exist. Throws
  // Error(kEmptyStore).
  std::vector<Neighbor> KnnQuery(const std::vector<double>& query, int k) const;

  // The k nearest records each contribute their n cheapest finite
  // trials (ties by insertion order); the cheapest candidate wins, ties by
  // neighbor distance, then instance id, then insertion order. Throws
  // Error(kNoFiniteTrials) when no finite candidate exists.
  Prediction PredictConfig(const std::vector<double>& query, int k, int n) const;

  // Appends every trial of `other` in its record order.
  void Merge(const ConfigStore& other);

  std::string Serialize() const;
  static ConfigStore Deserialize(std::string_view text);

  void Save(const std::filesystem::path& path) const;
  static ConfigStore Load(const std::filesystem::path& path);

  // Appends the events recorded since the last flush to the log at `path`,
  // writing the header first if the file is new. Other processes see a
  // record only after the flush that wrote it.
  void Flush(const std::filesystem::path& path);

  friend bool operator==(const ConfigStore& a, const ConfigStore& b);

 private:
  void InsertLocked(const std::string& instance_id, const std::vector<double>& embedding,
                    const Trial& trial);
  std::vector<Neighbor> KnnLocked(const std::vector<double>& query, int k) const;

  int dimension_;
  mutable std::shared_mutex mutex_;
  std::vector<ConfigRecord> records_;
  std::unordered_map<std::string, size_t> index_;
  std::vector<std::string> pending_;
};

}  // namespace milpsim

#endif  // MILPSIM_CONFIG_STORE_H_

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

#include "milpsim/config_store.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <tuple>

#include "milpsim/csv.h"
#include "milpsim/error.h"
#include "milpsim/mps.h"

namespace milpsim {
namespace {

constexpr std::string_view kHeaderTag = "milpsim-store";
constexpr std::string_view kVersionTag = "v1";

std::string Format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string RecordLine(const std::string& id, const std::vector<double>& embedding) {
  std::string line = "record instance_id=" + id + " embedding=";
  for (size_t i = 0; i < embedding.size(); ++i) {
    if (i > 0) line += ',';
    line += Format17(embedding[i]);
  }
  return line + "\n";
}

std::string TrialLine(const std::string& id, const Trial& t) {
  return "trial instance_id=" + id + " source=" + std::string(TrialSourceName(t.source)) +
         " cost=" + FormatCost(t.cost) + " " + SerializeConfig(t.config) + "\n";
}

std::string HeaderLine(int dimension) {
  return std::string(kHeaderTag) + " " + std::string(kVersionTag) +
         " dimension=" + std::to_string(dimension) + "\n";
}

[[noreturn]] void Malformed(size_t line, const std::string& what) {
  throw Error(ErrorCode::kMalformedFile,
              "store line " + std::to_string(line) + ": " + what);
}

// Splits off "key=value" from the front of `rest`.
std::string TakeField(std::string_view& rest, std::string_view key, size_t line) {
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  const std::string prefix = std::string(key) + "=";
  if (rest.substr(0, prefix.size()) != prefix) Malformed(line, "expected " + prefix);
  rest.remove_prefix(prefix.size());
  const size_t end = rest.find(' ');
  std::string value(rest.substr(0, end));
  rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
  return value;
}

}  // namespace

std::string_view TrialSourceName(TrialSource source) {
  switch (source) {
    case TrialSource::kDefault: return "DEFAULT";
    case TrialSource::kSearch: return "SEARCH";
    case TrialSource::kDeployment: return "DEPLOYMENT";
  }
  return "UNKNOWN";
}

std::optional<TrialSource> ParseTrialSource(std::string_view name) {
  for (TrialSource s : {TrialSource::kDefault, TrialSource::kSearch, TrialSource::kDeployment}) {
    if (TrialSourceName(s) == name) return s;
  }
  return std::nullopt;
}

ConfigStore::ConfigStore(int dimension) : dimension_(dimension) {
  if (dimension < 1) throw Error(ErrorCode::kInvalidArgument, "store dimension must be >= 1");
}

ConfigStore::ConfigStore(const ConfigStore& other) {
  std::shared_lock lock(other.mutex_);
  dimension_ = other.dimension_;
  records_ = other.records_;
  index_ = other.index_;
  pending_ = other.pending_;
}

ConfigStore& ConfigStore::operator=(const ConfigStore& other) {
  if (this == &other) return *this;
  std::unique_lock lock(mutex_, std::defer_lock);
  std::shared_lock other_lock(other.mutex_, std::defer_lock);
  std::lock(lock, other_lock);
  dimension_ = other.dimension_;
  records_ = other.records_;
  index_ = other.index_;
  pending_ = other.pending_;
  return *this;
}

size_t ConfigStore::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

std::vector<ConfigRecord> ConfigStore::Records() const {
  std::shared_lock lock(mutex_);
  return records_;
}

std::optional<ConfigRecord> ConfigStore::Get(const std::string& instance_id) const {
  std::shared_lock lock(mutex_);
  auto it = index_.find(instance_id);
  if (it == index_.end()) return std::nullopt;
  return records_[it->second];
}

void ConfigStore::InsertTrial(const std::string& instance_id,
                              const std::vector<double>& embedding, const SolverConfig& config,
                              double cost, TrialSource source) {
  std::unique_lock lock(mutex_);
  InsertLocked(instance_id, embedding, {Canonicalize(config), cost, source});
}

void ConfigStore::InsertLocked(const std::string& instance_id,
                               const std::vector<double>& embedding, const Trial& trial) {
  if (static_cast<int>(embedding.size()) != dimension_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "embedding has " + std::to_string(embedding.size()) + " entries, store expects " +
                    std::to_string(dimension_));
  }
  if (instance_id.empty() || instance_id.find_first_of(" \t\n\r") != std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "instance id must be a non-empty token");
  }
  auto it = index_.find(instance_id);
  if (it == index_.end()) {
    it = index_.emplace(instance_id, records_.size()).first;
    records_.push_back({instance_id, embedding, {}});
    pending_.push_back(RecordLine(instance_id, embedding));
  } else if (records_[it->second].embedding != embedding) {
    throw Error(ErrorCode::kEmbeddingMismatch,
                "instance " + instance_id + " is stored with a different embedding");
  }
  records_[it->second].trials.push_back(trial);
  pending_.push_back(TrialLine(instance_id, trial));
}

std::vector<Neighbor> ConfigStore::KnnQuery(const std::vector<double>& query, int k) const {
  std::shared_lock lock(mutex_);
  return KnnLocked(query, k);
}

std::vector<Neighbor> ConfigStore::KnnLocked(const std::vector<double>& query, int k) const {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (records_.empty()) throw Error(ErrorCode::kEmptyStore, "the config store is empty");
  if (static_cast<int>(query.size()) != dimension_) {
    throw Error(ErrorCode::kDimensionMismatch, "query length differs from store dimension");
  }
  std::vector<Neighbor> all;
  all.reserve(records_.size());
  for (const ConfigRecord& r : records_) {
    all.push_back({r.instance_id, std::sqrt(SquaredDistance(r.embedding, query))});
  }
  const auto closer = [](const Neighbor& a, const Neighbor& b) {
    return std::tie(a.distance, a.instance_id) < std::tie(b.distance, b.instance_id);
  };
  const size_t keep = std::min(all.size(), static_cast<size_t>(k));
  std::partial_sort(all.begin(), all.begin() + keep, all.end(), closer);
  all.resize(keep);
  return all;
}

Prediction ConfigStore::PredictConfig(const std::vector<double>& query, int k, int n) const {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  std::shared_lock lock(mutex_);
  const std::vector<Neighbor> neighbors = KnnLocked(query, k);
  std::optional<Prediction> best;
  for (const Neighbor& nb : neighbors) {
    const ConfigRecord& record = records_[index_.at(nb.instance_id)];
    std::vector<size_t> order;
    for (size_t t = 0; t < record.trials.size(); ++t) {
      if (std::isfinite(record.trials[t].cost)) order.push_back(t);
    }
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return record.trials[a].cost < record.trials[b].cost;
    });
    if (order.size() > static_cast<size_t>(n)) order.resize(n);
    for (size_t t : order) {
      // Candidates arrive in (distance, id, insertion) order, so only a
      // strictly lower cost replaces the current best.
      if (!best || record.trials[t].cost < best->cost) {
        best = Prediction{record.trials[t].config, record.instance_id, record.trials[t].cost,
                          nb.distance, t};
      }
    }
  }
  if (!best) {
    throw Error(ErrorCode::kNoFiniteTrials, "no neighbor has a finite-cost trial");
  }
  return *best;
}

void ConfigStore::Merge(const ConfigStore& other) {
  const std::vector<ConfigRecord> incoming = other.Records();
  if (other.dimension() != dimension_) {
    throw Error(ErrorCode::kDimensionMismatch, "cannot merge stores of different dimension");
  }
  std::unique_lock lock(mutex_);
  for (const ConfigRecord& r : incoming) {
    for (const Trial& t : r.trials) InsertLocked(r.instance_id, r.embedding, t);
  }
}

std::string ConfigStore::Serialize() const {
  std::shared_lock lock(mutex_);
  std::string out = HeaderLine(dimension_);
  for (const ConfigRecord& r : records_) {
    out += RecordLine(r.instance_id, r.embedding);
    for (const Trial& t : r.trials) out += TrialLine(r.instance_id, t);
  }
  return out;
}

ConfigStore ConfigStore::Deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  size_t number = 0;
  std::optional<ConfigStore> store;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string_view rest(line);
    const size_t space = rest.find(' ');
    const std::string_view kind = rest.substr(0, space);
    rest.remove_prefix(space == std::string_view::npos ? rest.size() : space);
    if (!store) {
      if (kind != kHeaderTag) Malformed(number, "missing store header");
      while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
      if (rest.substr(0, kVersionTag.size()) != kVersionTag) Malformed(number, "unknown version");
      rest.remove_prefix(kVersionTag.size());
      const std::string dim = TakeField(rest, "dimension", number);
      int dimension = 0;
      try {
        dimension = std::stoi(dim);
      } catch (const std::exception&) {
        Malformed(number, "bad dimension");
      }
      if (dimension < 1) Malformed(number, "bad dimension");
      store.emplace(dimension);
      continue;
    }
    if (kind == "record") {
      const std::string id = TakeField(rest, "instance_id", number);
      const std::string values = TakeField(rest, "embedding", number);
      std::vector<double> embedding;
      std::string_view v(values);
      while (!v.empty()) {
        const size_t comma = v.find(',');
        double x = 0.0;
        if (!ParseDouble(v.substr(0, comma), &x)) Malformed(number, "bad embedding value");
        embedding.push_back(x);
        v.remove_prefix(comma == std::string_view::npos ? v.size() : comma + 1);
      }
      if (static_cast<int>(embedding.size()) != store->dimension_) {
        Malformed(number, "embedding length differs from store dimension");
      }
      if (store->index_.count(id)) Malformed(number, "duplicate record " + id);
      store->index_.emplace(id, store->records_.size());
      store->records_.push_back({id, std::move(embedding), {}});
    } else if (kind == "trial") {
      const std::string id = TakeField(rest, "instance_id", number);
      const std::optional<TrialSource> source =
          ParseTrialSource(TakeField(rest, "source", number));
      if (!source) Malformed(number, "unknown trial source");
      double cost = 0.0;
      if (!ParseDouble(TakeField(rest, "cost", number), &cost)) Malformed(number, "bad cost");
      auto it = store->index_.find(id);
      if (it == store->index_.end()) Malformed(number, "trial before record " + id);
      SolverConfig config;
      try {
        config = ParseConfig(rest);
      } catch (const Error& e) {
        Malformed(number, e.what());
      }
      store->records_[it->second].trials.push_back({config, cost, *source});
    } else {
      Malformed(number, "unknown line kind '" + std::string(kind) + "'");
    }
  }
  if (!store) Malformed(number, "missing store header");
  return std::move(*store);
}

void ConfigStore::Save(const std::filesystem::path& path) const {
  WriteTextFile(path, Serialize());
}

ConfigStore ConfigStore::Load(const std::filesystem::path& path) {
  return Deserialize(ReadTextFile(path));
}

void ConfigStore::Flush(const std::filesystem::path& path) {
  std::unique_lock lock(mutex_);
  const bool fresh = !std::filesystem::exists(path);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (fresh) out << HeaderLine(dimension_);
  for (const std::string& line : pending_) out << line;
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "cannot append to " + path.string());
  pending_.clear();
}

bool operator==(const ConfigStore& a, const ConfigStore& b) {
  if (&a == &b) return true;
  std::shared_lock la(a.mutex_, std::defer_lock);
  std::shared_lock lb(b.mutex_, std::defer_lock);
  std::lock(la, lb);
  return a.dimension_ == b.dimension_ && a.records_ == b.records_;
}

}  // namespace milpsim

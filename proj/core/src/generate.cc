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

#include "milpsim/generate.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "milpsim/error.h"
#include "milpsim/rng.h"

namespace milpsim {
namespace {

std::string InstanceName(std::string_view family, int n, int m, uint64_t seed) {
  std::string name(family);
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return name + "_" + std::to_string(n) + "x" + std::to_string(m) + "_s" + std::to_string(seed);
}

// Draws `count` distinct indices from [0, n) by partial Fisher-Yates.
std::vector<int> DistinctIndices(Rng& rng, int n, int count) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < count; ++i) {
    const int k = i + static_cast<int>(rng.Index(n - i));
    std::swap(pool[i], pool[k]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

GeneratedInstance Cover(int n, int m, uint64_t seed) {
  Rng rng(seed);
  MilpData data;
  data.name = InstanceName("cover", n, m, seed);
  data.kinds.assign(n, VarKind::kBinary);
  data.lower.assign(n, 0.0);
  data.upper.assign(n, 1.0);
  for (int j = 0; j < n; ++j) data.objective.push_back(static_cast<double>(rng.UniformInt(1, 10)));

  // Planted cover: roughly a third of the variables.
  std::vector<double> planted(n, 0.0);
  const int cover_size = std::max(1, n / 3);
  for (int j : DistinctIndices(rng, n, cover_size)) planted[j] = 1.0;

  const int max_support = std::max(2, std::min(n, n / 2));
  for (int i = 0; i < m; ++i) {
    const int support = static_cast<int>(rng.UniformInt(2, max_support));
    std::vector<int> cols = DistinctIndices(rng, n, std::min(support, n));
    // Each row keeps at least one planted variable.
    bool covered = false;
    for (int j : cols) covered = covered || planted[j] == 1.0;
    if (!covered) {
      std::vector<int> in_cover;
      for (int j = 0; j < n; ++j) {
        if (planted[j] == 1.0) in_cover.push_back(j);
      }
      cols.back() = in_cover[rng.Index(in_cover.size())];
      std::sort(cols.begin(), cols.end());
      cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    }
    double activity = 0.0;
    for (int j : cols) {
      const double a = static_cast<double>(rng.UniformInt(1, 5));
      data.entries.push_back({i, j, a});
      activity += a * planted[j];
    }
    data.rhs.push_back(static_cast<double>(rng.UniformInt(1, static_cast<int64_t>(activity))));
    data.senses.push_back(Sense::kGe);
  }
  return {MilpInstance(std::move(data)), Assignment{planted}};
}

GeneratedInstance KnapsackMulti(int n, int m, uint64_t seed) {
  Rng rng(seed);
  MilpData data;
  data.name = InstanceName("knapsack_multi", n, m, seed);
  data.kinds.assign(n, VarKind::kBinary);
  data.lower.assign(n, 0.0);
  data.upper.assign(n, 1.0);
  for (int j = 0; j < n; ++j) {
    data.objective.push_back(-static_cast<double>(rng.UniformInt(1, 30)));
  }
  std::vector<double> planted(n, 0.0);
  for (int j : DistinctIndices(rng, n, std::max(1, n / 2))) planted[j] = 1.0;
  for (int i = 0; i < m; ++i) {
    double activity = 0.0;
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w = static_cast<double>(rng.UniformInt(1, 20));
      data.entries.push_back({i, j, w});
      activity += w * planted[j];
      total += w;
    }
    const double slack = std::floor((total - activity) * rng.Uniform(0.0, 0.3));
    data.rhs.push_back(activity + slack);
    data.senses.push_back(Sense::kLe);
  }
  return {MilpInstance(std::move(data)), Assignment{planted}};
}

// Shape of a PLACEMENT instance derived from (n, m).
struct PlacementShape {
  int bins = 0;
  int items = 0;
  std::vector<int> candidates;  // per item
};

PlacementShape PlacementShapeFor(int n, int m) {
  PlacementShape shape;
  shape.bins = std::max(2, m / 4);
  shape.items = m - shape.bins;
  const int edges = n - shape.bins;
  if (shape.items < 2 || edges < 2 * shape.items) {
    throw Error(ErrorCode::kUnsupportedDims,
                "PLACEMENT needs n - J >= 2 (m - J) with J = max(2, m / 4) bins; got n=" +
                    std::to_string(n) + " m=" + std::to_string(m));
  }
  for (int i = 0; i < shape.items; ++i) {
    shape.candidates.push_back(edges / shape.items + (i < edges % shape.items ? 1 : 0));
  }
  if (shape.candidates.front() > shape.bins) {
    throw Error(ErrorCode::kUnsupportedDims,
                "PLACEMENT has more candidate slots per item than bins; got n=" +
                    std::to_string(n) + " m=" + std::to_string(m));
  }
  return shape;
}

template <typename T>
void Shuffle(Rng& rng, std::vector<T>& v) {
  for (size_t j = v.size(); j > 1; --j) std::swap(v[j - 1], v[rng.Index(j)]);
}

// A PLACEMENT instance is a random relabeling of one of kPlacementLayouts
// latent layouts. A layout fixes the congestion level and which bins each item
// may use; sizes, capacities and prices depend on (n, m) only.
constexpr uint64_t kPlacementLayouts = 32;

GeneratedInstance Placement(int n, int m, uint64_t seed) {
  const PlacementShape shape = PlacementShapeFor(n, m);
  const int bins = shape.bins;
  const int items = shape.items;

  std::vector<double> size(items);
  for (int i = 0; i < items; ++i) size[i] = 1.0 + (7 * i) % 10 + 0.013 * i;
  const double total_size = std::accumulate(size.begin(), size.end(), 0.0);
  std::vector<double> capacity(bins);
  std::vector<double> overflow_cost(bins);
  for (int j = 0; j < bins; ++j) {
    capacity[j] = std::floor(0.9 * total_size * (1.0 + 0.5 * (j % 3)) / (1.5 * bins) + 0.5);
    overflow_cost[j] = 4.0 + 0.011 * j;
  }
  auto price = [&](int i, int k) {
    const double tilt = std::fmod(0.6180339887 * i + 0.4142135623 * k, 1.0) - 0.5;
    return size[i] * (1.0 + 0.25 * k) * (1.0 + 0.03 * tilt);
  };

  const uint64_t layout = DeriveSeed(seed, 1) % kPlacementLayouts;
  Rng layout_rng(DeriveSeed(DeriveSeed(static_cast<uint64_t>(n) << 32 | m, 2), layout));
  const double congestion = layout_rng.Uniform01();
  std::vector<int> rank(bins);
  std::iota(rank.begin(), rank.end(), 0);
  Shuffle(layout_rng, rank);
  std::vector<double> weight(bins);
  for (int j = 0; j < bins; ++j) {
    weight[j] = std::exp(-4.0 * congestion * rank[j] / std::max(1, bins - 1));
  }
  std::vector<std::vector<int>> item_bins(items);
  for (int i = 0; i < items; ++i) {
    std::vector<double> w = weight;
    for (int k = 0; k < shape.candidates[i]; ++k) {
      double u = layout_rng.Uniform01() * std::accumulate(w.begin(), w.end(), 0.0);
      int pick = 0;
      while (pick < bins - 1 && (w[pick] == 0.0 || u >= w[pick])) {
        u -= w[pick];
        ++pick;
      }
      while (w[pick] == 0.0) --pick;
      item_bins[i].push_back(pick);
      w[pick] = 0.0;
    }
  }

  // Relabeling: rows are items then bins, columns are (item, slot) pairs then
  // overflow variables, each list shuffled by the instance seed.
  Rng rng(DeriveSeed(seed, 3));
  std::vector<int> row_of(m);
  std::iota(row_of.begin(), row_of.end(), 0);
  Shuffle(rng, row_of);
  std::vector<int> col_of(n);
  std::iota(col_of.begin(), col_of.end(), 0);
  Shuffle(rng, col_of);

  MilpData data;
  data.name = InstanceName("placement", n, m, seed);
  data.objective.resize(n);
  data.kinds.resize(n);
  data.lower.assign(n, 0.0);
  data.upper.resize(n);
  data.rhs.resize(m);
  data.senses.resize(m);
  std::vector<double> planted(n, 0.0);
  std::vector<double> load(bins, 0.0);
  int slot = 0;
  for (int i = 0; i < items; ++i) {
    for (int k = 0; k < shape.candidates[i]; ++k, ++slot) {
      const int j = item_bins[i][k];
      const int col = col_of[slot];
      data.objective[col] = price(i, k);
      data.kinds[col] = VarKind::kBinary;
      data.upper[col] = 1.0;
      data.entries.push_back({row_of[i], col, 1.0});
      data.entries.push_back({row_of[items + j], col, size[i]});
      if (k == 0) {
        planted[col] = 1.0;
        load[j] += size[i];
      }
    }
  }
  for (int j = 0; j < bins; ++j, ++slot) {
    const int col = col_of[slot];
    data.objective[col] = overflow_cost[j];
    data.kinds[col] = VarKind::kContinuous;
    data.upper[col] = kInfinity;
    data.entries.push_back({row_of[items + j], col, -1.0});
    planted[col] = std::max(0.0, load[j] - capacity[j]);
  }
  for (int i = 0; i < items; ++i) {
    data.rhs[row_of[i]] = 1.0;
    data.senses[row_of[i]] = Sense::kEq;
  }
  for (int j = 0; j < bins; ++j) {
    data.rhs[row_of[items + j]] = capacity[j];
    data.senses[row_of[items + j]] = Sense::kLe;
  }
  return {MilpInstance(std::move(data)), Assignment{planted}};
}

}  // namespace

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kPlacement: return "PLACEMENT";
    case Family::kCover: return "COVER";
    case Family::kKnapsackMulti: return "KNAPSACK_MULTI";
  }
  return "UNKNOWN";
}

std::optional<Family> ParseFamily(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (Family f : {Family::kPlacement, Family::kCover, Family::kKnapsackMulti}) {
    if (FamilyName(f) == upper) return f;
  }
  return std::nullopt;
}

GeneratedInstance GenerateInstance(Family family, int n, int m, uint64_t seed) {
  if (n < 2 || m < 1) {
    throw Error(ErrorCode::kUnsupportedDims,
                "need n >= 2 and m >= 1; got n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
  switch (family) {
    case Family::kCover: return Cover(n, m, seed);
    case Family::kKnapsackMulti: return KnapsackMulti(n, m, seed);
    case Family::kPlacement: return Placement(n, m, seed);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown family");
}

}  // namespace milpsim

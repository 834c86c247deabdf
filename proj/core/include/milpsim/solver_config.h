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

#ifndef MILPSIM_SOLVER_CONFIG_H_
#define MILPSIM_SOLVER_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace milpsim {

class Rng;

enum class BranchingRule : uint8_t { kMostFractional, kPseudocost, kRandom };
enum class NodeSelection : uint8_t { kBestBound, kDfs, kHybrid };

std::string_view BranchingRuleName(BranchingRule rule);
std::string_view NodeSelectionName(NodeSelection selection);

// One point of the branch-and-bound parameter space.
struct SolverConfig {
  BranchingRule branching_rule = BranchingRule::kPseudocost;
  NodeSelection node_selection = NodeSelection::kBestBound;
  int plunge_depth = 0;                  // 0..10, meaningful for kHybrid only
  double rounding_heuristic_freq = 0.1;  // [0, 1]
  double branching_score_factor = 0.5;   // [0, 1]

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

inline constexpr int kMaxPlungeDepth = 10;

// Clamps the numeric fields into range and zeroes plunge_depth unless the node
// selection is kHybrid, so equal behavior implies equal records.
SolverConfig Canonicalize(SolverConfig config);

// Flat record with a fixed key order, e.g.
//   branching_rule=PSEUDOCOST node_selection=BEST_BOUND plunge_depth=0
//   rounding_heuristic_freq=0.1 branching_score_factor=0.5
// on a single line. Reals are printed in shortest round-trip form.
std::string SerializeConfig(const SolverConfig& config);

// Accepts the keys above in any order separated by spaces or tabs; every key
// must be present exactly once. Throws Error(kMalformedFile).
SolverConfig ParseConfig(std::string_view text);

struct CategoricalDomain {
  std::string name;
  std::vector<std::string> choices;
};

struct NumericDomain {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  bool integral = false;
};

struct ConfigSpace {
  std::vector<CategoricalDomain> categorical;
  std::vector<NumericDomain> numeric;
  SolverConfig default_config;
};

// The five-parameter space with default
// (PSEUDOCOST, BEST_BOUND, 0, 0.1, 0.5).
ConfigSpace DefaultConfigSpace();

bool Contains(const ConfigSpace& space, const SolverConfig& config);

// Uniform over the categorical choices and numeric ranges.
SolverConfig SampleConfig(const ConfigSpace& space, uint64_t seed);

// Parameter slots in record order; used by local-perturbation search.
inline constexpr int kNumConfigParameters = 5;

// Redraws parameter `index` (0..4, record order) uniformly from its domain.
SolverConfig RedrawParameter(const ConfigSpace& space, SolverConfig config,
                             int index, Rng& rng);

struct Limits {
  int64_t max_nodes = 200;
  double max_seconds = 60.0;
};

}  // namespace milpsim

#endif  // MILPSIM_SOLVER_CONFIG_H_

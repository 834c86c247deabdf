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

#include "milpsim/solver_config.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "milpsim/error.h"
#include "milpsim/mps.h"
#include "milpsim/rng.h"

namespace milpsim {
namespace {

constexpr std::array<std::string_view, 3> kRuleNames = {"MOST_FRACTIONAL", "PSEUDOCOST",
                                                        "RANDOM"};
constexpr std::array<std::string_view, 3> kSelectionNames = {"BEST_BOUND", "DFS", "HYBRID"};

template <size_t N>
int LookupName(const std::array<std::string_view, N>& names, std::string_view value) {
  for (size_t i = 0; i < N; ++i) {
    if (names[i] == value) return static_cast<int>(i);
  }
  return -1;
}

double Clamp01(double v) { return std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0); }

}  // namespace

std::string_view BranchingRuleName(BranchingRule rule) {
  return kRuleNames[static_cast<int>(rule)];
}

std::string_view NodeSelectionName(NodeSelection selection) {
  return kSelectionNames[static_cast<int>(selection)];
}

SolverConfig Canonicalize(SolverConfig config) {
  config.plunge_depth = std::clamp(config.plunge_depth, 0, kMaxPlungeDepth);
  if (config.node_selection != NodeSelection::kHybrid) config.plunge_depth = 0;
  config.rounding_heuristic_freq = Clamp01(config.rounding_heuristic_freq);
  config.branching_score_factor = Clamp01(config.branching_score_factor);
  return config;
}

std::string SerializeConfig(const SolverConfig& config) {
  std::string out;
  out += "branching_rule=";
  out += BranchingRuleName(config.branching_rule);
  out += " node_selection=";
  out += NodeSelectionName(config.node_selection);
  out += " plunge_depth=" + std::to_string(config.plunge_depth);
  out += " rounding_heuristic_freq=" + FormatDouble(config.rounding_heuristic_freq);
  out += " branching_score_factor=" + FormatDouble(config.branching_score_factor);
  return out;
}

SolverConfig ParseConfig(std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos >= text.size()) break;
    size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t') ++end;
    const std::string_view token = text.substr(pos, end - pos);
    const size_t eq = token.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kMalformedFile, "config token without '=': " + std::string(token));
    }
    if (!fields.emplace(std::string(token.substr(0, eq)), std::string(token.substr(eq + 1)))
             .second) {
      throw Error(ErrorCode::kMalformedFile,
                  "duplicate config key: " + std::string(token.substr(0, eq)));
    }
    pos = end;
  }
  auto take = [&](const char* key) {
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw Error(ErrorCode::kMalformedFile, std::string("missing config key: ") + key);
    }
    std::string value = it->second;
    fields.erase(it);
    return value;
  };
  auto real = [](const std::string& key, const std::string& value) {
    double v;
    if (!ParseDouble(value, &v) || !std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::kMalformedFile, "bad value for " + key + ": " + value);
    }
    return v;
  };

  SolverConfig config;
  const std::string rule = take("branching_rule");
  const int rule_index = LookupName(kRuleNames, rule);
  if (rule_index < 0) throw Error(ErrorCode::kMalformedFile, "unknown branching_rule: " + rule);
  config.branching_rule = static_cast<BranchingRule>(rule_index);

  const std::string selection = take("node_selection");
  const int selection_index = LookupName(kSelectionNames, selection);
  if (selection_index < 0) {
    throw Error(ErrorCode::kMalformedFile, "unknown node_selection: " + selection);
  }
  config.node_selection = static_cast<NodeSelection>(selection_index);

  const std::string depth = take("plunge_depth");
  if (depth.empty() || depth.size() > 2 ||
      !std::all_of(depth.begin(), depth.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      std::stoi(depth) > kMaxPlungeDepth) {
    throw Error(ErrorCode::kMalformedFile, "bad value for plunge_depth: " + depth);
  }
  config.plunge_depth = std::stoi(depth);
  config.rounding_heuristic_freq =
      real("rounding_heuristic_freq", take("rounding_heuristic_freq"));
  config.branching_score_factor = real("branching_score_factor", take("branching_score_factor"));
  if (!fields.empty()) {
    throw Error(ErrorCode::kMalformedFile, "unknown config key: " + fields.begin()->first);
  }
  return config;
}

ConfigSpace DefaultConfigSpace() {
  ConfigSpace space;
  space.categorical.push_back(
      {"branching_rule", {kRuleNames.begin(), kRuleNames.end()}});
  space.categorical.push_back(
      {"node_selection", {kSelectionNames.begin(), kSelectionNames.end()}});
  space.numeric.push_back({"plunge_depth", 0.0, static_cast<double>(kMaxPlungeDepth), true});
  space.numeric.push_back({"rounding_heuristic_freq", 0.0, 1.0, false});
  space.numeric.push_back({"branching_score_factor", 0.0, 1.0, false});
  return space;
}

bool Contains(const ConfigSpace& space, const SolverConfig& config) {
  auto has_choice = [&](size_t slot, std::string_view name) {
    if (slot >= space.categorical.size()) return false;
    const auto& choices = space.categorical[slot].choices;
    return std::find(choices.begin(), choices.end(), name) != choices.end();
  };
  auto in_range = [&](size_t slot, double v) {
    return slot < space.numeric.size() && v >= space.numeric[slot].lo &&
           v <= space.numeric[slot].hi;
  };
  return has_choice(0, BranchingRuleName(config.branching_rule)) &&
         has_choice(1, NodeSelectionName(config.node_selection)) &&
         in_range(0, config.plunge_depth) && in_range(1, config.rounding_heuristic_freq) &&
         in_range(2, config.branching_score_factor);
}

SolverConfig RedrawParameter(const ConfigSpace& space, SolverConfig config, int index,
                             Rng& rng) {
  auto numeric = [&](size_t slot) {
    const NumericDomain& d = space.numeric.at(slot);
    if (d.integral) {
      return static_cast<double>(rng.UniformInt(static_cast<int64_t>(std::ceil(d.lo)),
                                                static_cast<int64_t>(std::floor(d.hi))));
    }
    return rng.Uniform(d.lo, d.hi);
  };
  switch (index) {
    case 0: {
      const auto& choices = space.categorical.at(0).choices;
      config.branching_rule = static_cast<BranchingRule>(
          LookupName(kRuleNames, choices[rng.Index(choices.size())]));
      break;
    }
    case 1: {
      const auto& choices = space.categorical.at(1).choices;
      config.node_selection = static_cast<NodeSelection>(
          LookupName(kSelectionNames, choices[rng.Index(choices.size())]));
      break;
    }
    case 2: config.plunge_depth = static_cast<int>(numeric(0)); break;
    case 3: config.rounding_heuristic_freq = numeric(1); break;
    case 4: config.branching_score_factor = numeric(2); break;
    default: throw Error(ErrorCode::kInvalidArgument, "parameter index out of range");
  }
  return Canonicalize(config);
}

SolverConfig SampleConfig(const ConfigSpace& space, uint64_t seed) {
  Rng rng(seed);
  SolverConfig config = space.default_config;
  for (int i = 0; i < kNumConfigParameters; ++i) {
    config = RedrawParameter(space, config, i, rng);
  }
  return config;
}

}  // namespace milpsim

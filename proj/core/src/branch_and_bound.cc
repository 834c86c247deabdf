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

#include "milpsim/branch_and_bound.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "milpsim/rng.h"
#include "milpsim/simplex.h"

namespace milpsim {
namespace {

constexpr double kFractionalityTolerance = 1e-6;

struct Node {
  std::vector<double> lower;
  std::vector<double> upper;
  double bound = -kInfinity;  // parent relaxation value
  int depth = 0;
  // Branching that created this node, for pseudocost bookkeeping.
  int branched_var = -1;
  bool branched_up = false;
  double branched_distance = 0.0;
};

class Pseudocosts {
 public:
  explicit Pseudocosts(std::span<const double> objective) {
    for (double c : objective) {
      const double init = std::abs(c) + 1e-4;
      down_sum_.push_back(init);
      up_sum_.push_back(init);
    }
    down_count_.assign(objective.size(), 1);
    up_count_.assign(objective.size(), 1);
  }

  double Down(int j) const { return down_sum_[j] / down_count_[j]; }
  double Up(int j) const { return up_sum_[j] / up_count_[j]; }

  void Record(int j, bool up, double per_unit) {
    if (up) {
      up_sum_[j] += per_unit;
      ++up_count_[j];
    } else {
      down_sum_[j] += per_unit;
      ++down_count_[j];
    }
  }

 private:
  std::vector<double> down_sum_, up_sum_;
  std::vector<int64_t> down_count_, up_count_;
};

class Search {
 public:
  Search(const MilpInstance& instance, const SolverConfig& config, const Limits& limits,
         uint64_t seed)
      : instance_(instance), config_(Canonicalize(config)), limits_(limits), rng_(seed),
        pseudocosts_(instance.objective()) {}

  SolveResult Run() {
    const auto start = std::chrono::steady_clock::now();
    Node root;
    root.lower.assign(instance_.lower().begin(), instance_.lower().end());
    root.upper.assign(instance_.upper().begin(), instance_.upper().end());
    Push(std::move(root));

    bool limit_hit = false;
    while (!open_.empty()) {
      auto [id, node] = Select();
      if (Prunable(node.bound)) continue;
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (result_.nodes_explored >= limits_.max_nodes || elapsed > limits_.max_seconds) {
        Push(std::move(node), id);
        limit_hit = true;
        break;
      }
      Process(std::move(node));
    }

    if (result_.best_assignment) result_.best_cost = incumbent_;
    if (!limit_hit && result_.lp_failures == 0) {
      result_.status =
          result_.best_assignment ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
    } else {
      result_.status =
          result_.best_assignment ? SolveStatus::kFeasibleLimit : SolveStatus::kNoSolution;
    }
    double bound = incumbent_;
    for (const auto& [key, unused] : by_bound_) bound = std::min(bound, key.first);
    if (result_.status == SolveStatus::kOptimal) bound = incumbent_;
    if (result_.status == SolveStatus::kNoSolution && open_.empty()) bound = -kInfinity;
    result_.best_bound = bound;
    result_.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(result_);
  }

 private:
  bool Prunable(double bound) const {
    if (!result_.best_assignment) return false;
    return bound >= incumbent_ - 1e-9 * std::max(1.0, std::abs(incumbent_));
  }

  void Push(Node node, int64_t id = -1) {
    if (id < 0) id = next_id_++;
    by_bound_.emplace(std::make_pair(node.bound, id), 0);
    open_.emplace(id, std::move(node));
  }

  std::pair<int64_t, Node> Take(int64_t id) {
    auto it = open_.find(id);
    std::pair<int64_t, Node> out(id, std::move(it->second));
    by_bound_.erase(std::make_pair(out.second.bound, id));
    open_.erase(it);
    return out;
  }

  std::pair<int64_t, Node> Select() {
    switch (config_.node_selection) {
      case NodeSelection::kDfs:
        return Take(open_.rbegin()->first);
      case NodeSelection::kHybrid:
        if (dive_child_ >= 0 && open_.count(dive_child_)) {
          const int64_t id = dive_child_;
          dive_child_ = -1;
          return Take(id);
        } else {
          auto taken = Take(by_bound_.begin()->first.second);
          plunge_start_ = taken.second.depth;
          return taken;
        }
      case NodeSelection::kBestBound:
        break;
    }
    return Take(by_bound_.begin()->first.second);
  }

  void TryIncumbent(std::vector<double> x) {
    const FeasibilityReport report = EvaluateAssignment(instance_, Assignment{x});
    if (!report.feasible) return;
    const double cost = ObjectiveValue(instance_, x);
    if (!result_.best_assignment || cost < incumbent_) {
      incumbent_ = cost;
      result_.best_assignment = Assignment{std::move(x)};
    }
  }

  std::vector<double> RoundIntegers(std::span<const double> x) const {
    std::vector<double> rounded(x.begin(), x.end());
    for (int j = 0; j < instance_.num_vars(); ++j) {
      if (instance_.kinds()[j] == VarKind::kContinuous) continue;
      rounded[j] = std::clamp(std::floor(x[j] + 0.5), instance_.lower()[j], instance_.upper()[j]);
    }
    return rounded;
  }

  // Rounds the integer variables to nearest within their global bounds, then
  // re-solves any continuous variables with the integers fixed.
  void TryRounding(std::span<const double> x) {
    std::vector<double> rounded = RoundIntegers(x);
    if (instance_.num_integer() == instance_.num_vars()) {
      TryIncumbent(std::move(rounded));
      return;
    }
    std::vector<double> lo(instance_.lower().begin(), instance_.lower().end());
    std::vector<double> up(instance_.upper().begin(), instance_.upper().end());
    for (int j = 0; j < instance_.num_vars(); ++j) {
      if (instance_.kinds()[j] != VarKind::kContinuous) lo[j] = up[j] = rounded[j];
    }
    const LpResult repair = SolveLpRelaxation(instance_, lo, up);
    if (repair.status != LpStatus::kOptimal) return;
    for (int j = 0; j < instance_.num_vars(); ++j) {
      if (instance_.kinds()[j] == VarKind::kContinuous) rounded[j] = repair.x[j];
    }
    TryIncumbent(std::move(rounded));
  }

  void Process(Node node) {
    dive_child_ = -1;
    ++result_.nodes_explored;
    const LpResult lp = SolveLpRelaxation(instance_, node.lower, node.upper);
    if (lp.status == LpStatus::kNumericalBreakdown || lp.status == LpStatus::kUnbounded) {
      ++result_.lp_failures;
      return;
    }
    if (lp.status == LpStatus::kInfeasible) return;

    if (node.branched_var >= 0 && node.branched_distance > 0) {
      const double increase = std::max(0.0, lp.objective - node.bound);
      pseudocosts_.Record(node.branched_var, node.branched_up,
                          increase / node.branched_distance);
    }
    if (Prunable(lp.objective)) return;

    std::vector<int> candidates;
    for (int j = 0; j < instance_.num_vars(); ++j) {
      if (instance_.kinds()[j] == VarKind::kContinuous) continue;
      const double f = lp.x[j] - std::floor(lp.x[j]);
      if (f > kFractionalityTolerance && f < 1.0 - kFractionalityTolerance) {
        candidates.push_back(j);
      }
    }
    if (candidates.empty()) {
      TryIncumbent(RoundIntegers(lp.x));
      return;
    }
    // Candidates ordered by objective coefficient, so the choice does not
    // depend on column order when coefficients are distinct.
    const auto c = instance_.objective();
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](int a, int b) { return c[a] < c[b]; });
    if (rng_.Bernoulli(config_.rounding_heuristic_freq)) {
      TryRounding(lp.x);
      if (Prunable(lp.objective)) return;
    }

    const int var = ChooseVariable(candidates, lp.x);
    const double value = lp.x[var];
    const double f = value - std::floor(value);
    Node down = node;
    Node up = std::move(node);
    down.upper[var] = std::floor(value);
    up.lower[var] = std::ceil(value);
    for (Node* child : {&down, &up}) {
      child->bound = lp.objective;
      child->depth += 1;
      child->branched_var = var;
    }
    down.branched_up = false;
    down.branched_distance = f;
    up.branched_up = true;
    up.branched_distance = 1.0 - f;

    // The nearest-rounding child is pushed last so that DFS and plunging
    // visit it first.
    const bool prefer_up = f >= 0.5;
    const int child_depth = down.depth;
    if (prefer_up) {
      Push(std::move(down));
      Push(std::move(up));
    } else {
      Push(std::move(up));
      Push(std::move(down));
    }
    if (config_.node_selection == NodeSelection::kHybrid &&
        child_depth - plunge_start_ <= config_.plunge_depth) {
      dive_child_ = next_id_ - 1;
    }
  }

  int ChooseVariable(const std::vector<int>& candidates, std::span<const double> x) {
    if (config_.branching_rule == BranchingRule::kRandom) {
      return candidates[rng_.Index(candidates.size())];
    }
    int best = candidates.front();
    double best_score = -kInfinity;
    for (int j : candidates) {
      const double f = x[j] - std::floor(x[j]);
      double score;
      if (config_.branching_rule == BranchingRule::kMostFractional) {
        score = -std::abs(f - 0.5);
      } else {
        const double down = pseudocosts_.Down(j) * f;
        const double up = pseudocosts_.Up(j) * (1.0 - f);
        const double factor = config_.branching_score_factor;
        score = factor * std::min(down, up) + (1.0 - factor) * std::max(down, up);
      }
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  const MilpInstance& instance_;
  const SolverConfig config_;
  const Limits limits_;
  Rng rng_;
  Pseudocosts pseudocosts_;
  SolveResult result_;
  double incumbent_ = kInfinity;
  std::map<int64_t, Node> open_;
  std::map<std::pair<double, int64_t>, int> by_bound_;
  int64_t next_id_ = 0;
  int64_t dive_child_ = -1;
  int plunge_start_ = 0;
};

}  // namespace

std::string_view SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "OPTIMAL";
    case SolveStatus::kFeasibleLimit: return "FEASIBLE_LIMIT";
    case SolveStatus::kNoSolution: return "NO_SOLUTION";
    case SolveStatus::kInfeasible: return "INFEASIBLE";
  }
  return "UNKNOWN";
}

SolveResult BranchAndBound(const MilpInstance& instance, const SolverConfig& config,
                           const Limits& limits, uint64_t seed) {
  return Search(instance, config, limits, seed).Run();
}

}  // namespace milpsim

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

#ifndef MILPSIM_BRANCH_AND_BOUND_H_
#define MILPSIM_BRANCH_AND_BOUND_H_

#include <cstdint>
#include <optional>
#include <string_view>

#include "milpsim/milp.h"
#include "milpsim/solver_config.h"

namespace milpsim {

enum class SolveStatus : uint8_t { kOptimal, kFeasibleLimit, kNoSolution, kInfeasible };

std::string_view SolveStatusName(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kNoSolution;
  // Primal bound; +inf when no feasible point was found.
  double best_cost = kInfinity;
  std::optional<Assignment> best_assignment;
  // Smallest bound over open nodes and the incumbent at termination.
  double best_bound = -kInfinity;
  // Number of LP relaxations solved.
  int64_t nodes_explored = 0;
  // LPs that ended in numerical breakdown or reported unboundedness. Such
  // nodes are dropped, so a run with breakdowns never claims optimality.
  int64_t lp_failures = 0;
  // Not part of the deterministic output.
  double wall_time = 0.0;
};

// Deterministic LP-based branch and bound. Candidates for branching are
// integer-kind variables with fractionality above 1e-6, ordered by objective
// coefficient (stable on column index); score ties and RANDOM draws follow
// that order. Limits produce
// kFeasibleLimit or kNoSolution, never exceptions. `seed` drives the RANDOM
// branching rule and the rounding heuristic.
SolveResult BranchAndBound(const MilpInstance& instance, const SolverConfig& config,
                           const Limits& limits, uint64_t seed);

}  // namespace milpsim

#endif  // MILPSIM_BRANCH_AND_BOUND_H_

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

#ifndef MILPSIM_TUNER_H_
#define MILPSIM_TUNER_H_

#include <cstdint>
#include <vector>

#include "milpsim/milp.h"
#include "milpsim/solver_config.h"

namespace milpsim {

struct SearchBudget {
  int evaluations = 20;
  Limits per_eval_limits;
  uint64_t seed = 0;
};

struct Evaluation {
  SolverConfig config;
  double cost = kInfinity;
  int order = 0;  // 0 for the default, then proposal order
};

// Evaluation 0 is the default configuration. Later proposals alternate
// between a uniform draw from the space and the incumbent with one parameter
// redrawn, starting with a uniform draw. Proposals equal to an evaluated
// configuration are skipped without a solve; after 50 consecutive skips the
// search stops early. Every solve uses SolveSeed(seed). The
// result is sorted by cost, ties by evaluation order.
std::vector<Evaluation> SearchConfigs(const MilpInstance& instance, const ConfigSpace& space,
                                      const SearchBudget& budget);

// Searches every instance; results[i] belongs to instances[i].
std::vector<std::vector<Evaluation>> SearchAll(const std::vector<MilpInstance>& instances,
                                               const ConfigSpace& space,
                                               const SearchBudget& budget, int workers);

// Scores each distinct configuration by its mean cost over the instances
// where it was evaluated and returns the lowest mean; ties go to the
// configuration met first in instance order, then evaluation order.
SolverConfig IncumbentConfig(const std::vector<std::vector<Evaluation>>& results);

}  // namespace milpsim

#endif  // MILPSIM_TUNER_H_

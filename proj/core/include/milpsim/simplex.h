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

#ifndef MILPSIM_SIMPLEX_H_
#define MILPSIM_SIMPLEX_H_

#include <cstdint>
#include <span>
#include <vector>

#include "milpsim/milp.h"

namespace milpsim {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalBreakdown };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;   // structural values; filled when kOptimal
  double objective = 0.0;  // c'x; filled when kOptimal
  int64_t pivots = 0;
};

struct LpOptions {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  // Ratio-test entries below this magnitude are treated as zero.
  double zero_tolerance = 1e-12;
  // A chosen pivot smaller than this aborts with kNumericalBreakdown.
  double min_pivot = 1e-11;
  int64_t max_pivots = 200000;
};

// Solves the LP relaxation of `instance` with the variable bounds replaced by
// [lower, upper]. Dense bounded-variable primal simplex, two phases
// (artificial variables in phase one), Bland's smallest-index rule for both
// the entering and the leaving variable. Deterministic.
LpResult SolveLpRelaxation(const MilpInstance& instance,
                           std::span<const double> lower,
                           std::span<const double> upper,
                           const LpOptions& options = {});

inline LpResult SolveLpRelaxation(const MilpInstance& instance) {
  return SolveLpRelaxation(instance, instance.lower(), instance.upper());
}

}  // namespace milpsim

#endif  // MILPSIM_SIMPLEX_H_

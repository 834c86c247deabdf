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

#ifndef MILPSIM_GENERATE_H_
#define MILPSIM_GENERATE_H_

#include <cstdint>
#include <optional>
#include <string_view>

#include "milpsim/milp.h"

namespace milpsim {

enum class Family : uint8_t { kPlacement, kCover, kKnapsackMulti };

std::string_view FamilyName(Family family);
// Accepts the names printed by FamilyName, case-insensitively.
std::optional<Family> ParseFamily(std::string_view name);

struct GeneratedInstance {
  MilpInstance instance;
  // Feasible point planted by the construction.
  Assignment planted;
};

// Pure function of (family, n, m, seed). Every instance of one
// (family, n, m) triple has the same shape.
//
//   COVER           n binary variables, m covering rows a'x >= b with small
//                   positive integer coefficients.
//   KNAPSACK_MULTI  n binary variables, m packing rows a'x <= b; the objective
//                   is the negated profit.
//   PLACEMENT       items are assigned to bins. With J bins and I = m - J
//                   items, each item has a fixed number of candidate bins and
//                   every bin an overflow variable:
//                     sum_j x_ij = 1                    (assignment, EQ)
//                     sum_i s_i x_ij - o_j <= cap_j     (capacity, LE)
//                   Sizes, capacities and prices depend on (n, m) only. Each
//                   instance is a random relabeling of one of 32 latent
//                   layouts; a layout fixes a congestion level and the
//                   candidate bins of every item.
//
// Throws Error(kUnsupportedDims) when the family cannot fit (n, m).
GeneratedInstance GenerateInstance(Family family, int n, int m, uint64_t seed);

}  // namespace milpsim

#endif  // MILPSIM_GENERATE_H_

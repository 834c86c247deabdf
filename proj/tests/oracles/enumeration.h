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

#ifndef MILPSIM_TESTS_ORACLES_ENUMERATION_H_
#define MILPSIM_TESTS_ORACLES_ENUMERATION_H_

#include <limits>
#include <vector>

#include "milpsim/milp.h"

namespace milpsim::oracle {

struct EnumerationResult {
  bool feasible = false;
  double cost = std::numeric_limits<double>::infinity();
  std::vector<double> x;
};

// Exhaustive search over every 0/1 point of a pure binary instance. Rows are
// checked straight from the triplets with an absolute tolerance of 1e-9.
EnumerationResult EnumerateBinary(const MilpInstance& instance);

}  // namespace milpsim::oracle

#endif  // MILPSIM_TESTS_ORACLES_ENUMERATION_H_

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

#ifndef MILPSIM_TESTS_ORACLES_REFERENCE_STATS_H_
#define MILPSIM_TESTS_ORACLES_REFERENCE_STATS_H_

#include <array>
#include <vector>

#include "milpsim/milp.h"

namespace milpsim::oracle {

// r = (n sum xy - sum x sum y) / sqrt((n sum x^2 - (sum x)^2)(n sum y^2 - (sum y)^2)).
double TextbookPearson(const std::vector<double>& x, const std::vector<double>& y);

// The 14 shallow statistics, each computed in its own loop over the raw data.
std::array<double, 14> StraightLineShallow(const MilpInstance& instance);

}  // namespace milpsim::oracle

#endif  // MILPSIM_TESTS_ORACLES_REFERENCE_STATS_H_

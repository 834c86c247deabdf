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
#ifndef MILPSIM_ORDERED_SUM_H_
#define MILPSIM_ORDERED_SUM_H_

#include <algorithm>
#include <span>
#include <vector>

namespace milpsim {

// Sums values in ascending order. The result depends only on the multiset of
// inputs, not on their arrangement, so it is bit-identical under any
// permutation of the input.
inline double OrderedSum(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  return sum;
}

}  // namespace milpsim

#endif  // MILPSIM_ORDERED_SUM_H_

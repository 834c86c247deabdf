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

#include "oracles/reference_stats.h"

#include <algorithm>
#include <cmath>

namespace milpsim::oracle {
namespace {

void Describe(const std::vector<double>& v, double* lo, double* hi, double* mean, double* sd) {
  if (v.empty()) {
    *lo = *hi = *mean = *sd = 0.0;
    return;
  }
  *lo = *std::min_element(v.begin(), v.end());
  *hi = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += x;
  *mean = s / v.size();
  double q = 0.0;
  for (double x : v) q += (x - *mean) * (x - *mean);
  *sd = std::sqrt(q / v.size());
}

}  // namespace

double TextbookPearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

std::array<double, 14> StraightLineShallow(const MilpInstance& instance) {
  const MilpData& d = instance.data();
  std::vector<double> a;
  for (const MatrixEntry& e : d.entries) a.push_back(e.value);
  std::array<double, 14> out{};
  out[0] = static_cast<double>(d.objective.size());
  out[1] = static_cast<double>(d.rhs.size());
  out[2] = static_cast<double>(a.size());
  Describe(d.objective, &out[3], &out[4], &out[5], &out[6]);
  Describe(a, &out[7], &out[8], &out[9], &out[10]);
  double unused;
  Describe(d.rhs, &out[11], &unused, &out[12], &out[13]);
  return out;
}

}  // namespace milpsim::oracle

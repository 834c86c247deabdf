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

#ifndef MILPSIM_TESTS_SUPPORT_TEST_UTIL_H_
#define MILPSIM_TESTS_SUPPORT_TEST_UTIL_H_

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "milpsim/error.h"
#include "milpsim/featurize.h"
#include "milpsim/milp.h"
#include "milpsim/rng.h"

namespace milpsim::testing {

// Runs f and returns the code of the milpsim::Error it throws, if any.
template <class F>
std::optional<ErrorCode> ThrownCode(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline MilpInstance MakeInstance(std::vector<double> c, std::vector<MatrixEntry> a,
                                 std::vector<double> b, std::vector<Sense> senses,
                                 std::vector<VarKind> kinds, std::vector<double> lower,
                                 std::vector<double> upper, std::string name = "t") {
  MilpData d;
  d.name = std::move(name);
  d.objective = std::move(c);
  d.entries = std::move(a);
  d.rhs = std::move(b);
  d.senses = std::move(senses);
  d.kinds = std::move(kinds);
  d.lower = std::move(lower);
  d.upper = std::move(upper);
  return MilpInstance(std::move(d));
}

// Reorders variables by var_perm (new index j holds old var_perm[j]) and rows
// by row_perm, keeping the entry list sorted by (row, col).
inline MilpInstance PermuteInstance(const MilpInstance& instance,
                                    const std::vector<int>& var_perm,
                                    const std::vector<int>& row_perm) {
  const MilpData& d = instance.data();
  std::vector<int> var_new(var_perm.size()), row_new(row_perm.size());
  for (size_t j = 0; j < var_perm.size(); ++j) var_new[var_perm[j]] = static_cast<int>(j);
  for (size_t i = 0; i < row_perm.size(); ++i) row_new[row_perm[i]] = static_cast<int>(i);
  MilpData out;
  out.name = d.name;
  for (int old : var_perm) {
    out.objective.push_back(d.objective[old]);
    out.kinds.push_back(d.kinds[old]);
    out.lower.push_back(d.lower[old]);
    out.upper.push_back(d.upper[old]);
  }
  for (int old : row_perm) {
    out.rhs.push_back(d.rhs[old]);
    out.senses.push_back(d.senses[old]);
  }
  for (const MatrixEntry& e : d.entries) {
    out.entries.push_back({row_new[e.row], var_new[e.col], e.value});
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return MilpInstance(std::move(out));
}

inline std::vector<int> RandomPermutation(int size, Rng& rng) {
  std::vector<int> p(size);
  for (int i = 0; i < size; ++i) p[i] = i;
  for (int i = size; i > 1; --i) std::swap(p[i - 1], p[rng.Index(i)]);
  return p;
}

// Mixed-kind instance with random sparse rows; coefficients are drawn from a
// small set so ties and repeated values are common.
inline MilpInstance RandomMixedInstance(uint64_t seed, int n, int m) {
  Rng rng(seed);
  MilpData d;
  d.name = "r" + std::to_string(seed);
  for (int j = 0; j < n; ++j) {
    d.objective.push_back(static_cast<double>(rng.UniformInt(-3, 3)));
    const int kind = static_cast<int>(rng.UniformInt(0, 2));
    d.kinds.push_back(static_cast<VarKind>(kind));
    if (kind == 0) {
      d.lower.push_back(0.0);
      d.upper.push_back(1.0);
    } else {
      d.lower.push_back(rng.Bernoulli(0.2) ? -kInfinity : 0.0);
      d.upper.push_back(rng.Bernoulli(0.3) ? kInfinity : static_cast<double>(rng.UniformInt(1, 5)));
    }
  }
  for (int i = 0; i < m; ++i) {
    d.senses.push_back(static_cast<Sense>(rng.UniformInt(0, 2)));
    d.rhs.push_back(static_cast<double>(rng.UniformInt(-2, 6)));
    for (int j = 0; j < n; ++j) {
      if (rng.Bernoulli(0.4)) {
        d.entries.push_back({i, j, static_cast<double>(rng.UniformInt(1, 4)) * (rng.Bernoulli(0.2) ? -1 : 1)});
      }
    }
  }
  return MilpInstance(std::move(d));
}

}  // namespace milpsim::testing

#endif  // MILPSIM_TESTS_SUPPORT_TEST_UTIL_H_

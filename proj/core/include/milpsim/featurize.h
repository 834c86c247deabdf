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

#ifndef MILPSIM_FEATURIZE_H_
#define MILPSIM_FEATURIZE_H_

#include <array>
#include <vector>

#include <Eigen/Core>

#include "milpsim/milp.h"

namespace milpsim {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr int kVarFeatureWidth = 5;
inline constexpr int kConsFeatureWidth = 4;

struct GraphEdge {
  int var = 0;
  int cons = 0;
  double coef = 0.0;
};

// Variable rows: one-hot kind (binary, integer, continuous), lower, upper.
// Constraint rows: one-hot sense (GE, LE, EQ), rhs. Infinite bounds are
// written as 0; the kind one-hot is left to disambiguate them.
struct BipartiteGraph {
  RowMatrix var_features;   // n x 5
  RowMatrix cons_features;  // m x 4
  std::vector<GraphEdge> edges;

  int num_vars() const { return static_cast<int>(var_features.rows()); }
  int num_cons() const { return static_cast<int>(cons_features.rows()); }
};

BipartiteGraph ExtractBipartite(const MilpInstance& instance);

inline constexpr int kShallowFeatureCount = 14;
using ShallowFeatures = std::array<double, kShallowFeatureCount>;

// n, m, nnz; min/max/mean/std of c; min/max/mean/std of the stored nonzeros
// of A; min/mean/std of b. Standard deviations are population deviations;
// the statistics of an empty block are 0.
// Throws Error(kEmptyConstraints) when m = 0.
ShallowFeatures ComputeShallowFeatures(const MilpInstance& instance);

}  // namespace milpsim

#endif  // MILPSIM_FEATURIZE_H_

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

#include "milpsim/featurize.h"

#include <algorithm>
#include <cmath>
#include <span>

#include "milpsim/error.h"

namespace milpsim {
namespace {

double FiniteOrZero(double v) { return std::isfinite(v) ? v : 0.0; }

struct Moments {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;
};

Moments Summarize(std::span<const double> values) {
  Moments out;
  if (values.empty()) return out;
  out.min = *std::min_element(values.begin(), values.end());
  out.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / values.size();
  double squares = 0.0;
  for (double v : values) squares += (v - out.mean) * (v - out.mean);
  out.std = std::sqrt(squares / values.size());
  return out;
}

}  // namespace

BipartiteGraph ExtractBipartite(const MilpInstance& instance) {
  BipartiteGraph graph;
  const int n = instance.num_vars();
  const int m = instance.num_rows();
  graph.var_features = RowMatrix::Zero(n, kVarFeatureWidth);
  for (int j = 0; j < n; ++j) {
    graph.var_features(j, static_cast<int>(instance.kinds()[j])) = 1.0;
    graph.var_features(j, 3) = FiniteOrZero(instance.lower()[j]);
    graph.var_features(j, 4) = FiniteOrZero(instance.upper()[j]);
  }
  graph.cons_features = RowMatrix::Zero(m, kConsFeatureWidth);
  for (int i = 0; i < m; ++i) {
    graph.cons_features(i, static_cast<int>(instance.senses()[i])) = 1.0;
    graph.cons_features(i, 3) = instance.rhs()[i];
  }
  graph.edges.reserve(instance.num_nonzeros());
  for (const MatrixEntry& e : instance.entries()) {
    graph.edges.push_back({e.col, e.row, e.value});
  }
  return graph;
}

ShallowFeatures ComputeShallowFeatures(const MilpInstance& instance) {
  if (instance.num_rows() == 0) {
    throw Error(ErrorCode::kEmptyConstraints,
                "shallow features need at least one constraint");
  }
  std::vector<double> coefs;
  coefs.reserve(instance.num_nonzeros());
  for (const MatrixEntry& e : instance.entries()) coefs.push_back(e.value);
  const Moments c = Summarize(instance.objective());
  const Moments a = Summarize(coefs);
  const Moments b = Summarize(instance.rhs());
  return {static_cast<double>(instance.num_vars()),
          static_cast<double>(instance.num_rows()),
          static_cast<double>(instance.num_nonzeros()),
          c.min, c.max, c.mean, c.std,
          a.min, a.max, a.mean, a.std,
          b.min, b.mean, b.std};
}

}  // namespace milpsim

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

#include "oracles/reference_encoder.h"

#include <cmath>

namespace milpsim::oracle {
namespace {

using Table = std::vector<std::vector<double>>;

// W is rows x cols, row-major at p[offset].
Table Apply(const Table& x, const std::vector<double>& p, size_t offset, int rows, int cols) {
  Table out(x.size(), std::vector<double>(rows, 0.0));
  for (size_t i = 0; i < x.size(); ++i) {
    for (int r = 0; r < rows; ++r) {
      double s = 0.0;
      for (int c = 0; c < cols; ++c) s += p[offset + r * cols + c] * x[i][c];
      out[i][r] = s;
    }
  }
  return out;
}

void Standardize(Table& x) {
  if (x.empty()) return;
  const size_t rows = x.size();
  for (size_t k = 0; k < x[0].size(); ++k) {
    double mean = 0.0;
    for (size_t i = 0; i < rows; ++i) mean += x[i][k];
    mean /= rows;
    double var = 0.0;
    for (size_t i = 0; i < rows; ++i) var += (x[i][k] - mean) * (x[i][k] - mean);
    var /= rows;
    for (size_t i = 0; i < rows; ++i) x[i][k] = (x[i][k] - mean) / std::sqrt(var + 1e-5);
  }
}

void Relu(Table& x) {
  for (auto& row : x) {
    for (double& v : row) v = std::max(v, 0.0);
  }
}

}  // namespace

std::vector<double> ReferenceEmbed(const EncoderModel& model, const BipartiteGraph& graph) {
  const int h = model.hidden();
  const std::vector<double> p(model.params().begin(), model.params().end());
  const int n = graph.num_vars();
  const int m = graph.num_cons();

  size_t at = 0;
  const size_t var_lift = at;
  at += h * 5;
  const size_t cons_lift = at;
  at += h * 4;
  const size_t theta1 = at;
  at += 4 * h * h;
  const size_t theta2 = at;
  at += 4 * h * h;
  const size_t scale = at;
  at += h;
  const size_t shift = at;
  at += h;
  const size_t attention = at;
  at += h;
  const size_t projection = at;

  Table xv(n, std::vector<double>(5)), xc(m, std::vector<double>(4));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < 5; ++k) xv[i][k] = graph.var_features(i, k);
  }
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < 4; ++k) xc[i][k] = graph.cons_features(i, k);
  }
  Table v = Apply(xv, p, var_lift, h, 5);
  Table c = Apply(xc, p, cons_lift, h, 4);

  for (int l = 0; l < 4; ++l) {
    const size_t t1 = theta1 + static_cast<size_t>(l) * h * h;
    const size_t t2 = theta2 + static_cast<size_t>(l) * h * h;

    Table msg(m, std::vector<double>(h, 0.0));
    for (const GraphEdge& e : graph.edges) {
      for (int k = 0; k < h; ++k) msg[e.cons][k] += e.coef * v[e.var][k];
    }
    Table a = Apply(c, p, t1, h, h);
    Table b = Apply(msg, p, t2, h, h);
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < h; ++k) a[i][k] += b[i][k];
    }
    Standardize(a);
    Relu(a);
    c = a;

    msg.assign(n, std::vector<double>(h, 0.0));
    for (const GraphEdge& e : graph.edges) {
      for (int k = 0; k < h; ++k) msg[e.var][k] += e.coef * c[e.cons][k];
    }
    a = Apply(v, p, t1, h, h);
    b = Apply(msg, p, t2, h, h);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < h; ++k) a[i][k] += b[i][k];
    }
    Standardize(a);
    Relu(a);
    v = a;
  }

  Table y = v;
  y.insert(y.end(), c.begin(), c.end());
  Standardize(y);
  for (auto& row : y) {
    for (int k = 0; k < h; ++k) row[k] = row[k] * p[scale + k] + p[shift + k];
  }

  std::vector<double> g(2 * h, 0.0);
  for (int k = 0; k < h; ++k) {
    double best = y[0][k];
    for (const auto& row : y) best = std::max(best, row[k]);
    g[k] = best;
  }
  std::vector<double> score(y.size());
  double top = -INFINITY;
  for (size_t i = 0; i < y.size(); ++i) {
    double s = 0.0;
    for (int k = 0; k < h; ++k) s += p[attention + k] * y[i][k];
    score[i] = s;
    top = std::max(top, s);
  }
  double total = 0.0;
  for (double& s : score) {
    s = std::exp(s - top);
    total += s;
  }
  for (size_t i = 0; i < y.size(); ++i) {
    for (int k = 0; k < h; ++k) g[h + k] += score[i] / total * y[i][k];
  }

  std::vector<double> out(256, 0.0);
  for (int r = 0; r < 256; ++r) {
    for (int k = 0; k < 2 * h; ++k) out[r] += p[projection + r * 2 * h + k] * g[k];
  }
  return out;
}

}  // namespace milpsim::oracle

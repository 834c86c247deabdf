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

#include "milpsim/encoder.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "milpsim/error.h"
#include "milpsim/rng.h"

namespace milpsim {
namespace {

using Adjacency = std::vector<std::vector<std::pair<int, double>>>;

// Ascending-order sum; the buffer is reordered.
double SortedSum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

ForwardCache::Standardized Standardize(const RowMatrix& x) {
  ForwardCache::Standardized result;
  const int rows = static_cast<int>(x.rows());
  const int cols = static_cast<int>(x.cols());
  result.out.resize(rows, cols);
  result.inv_std = Eigen::VectorXd::Ones(cols);
  if (rows == 0) return result;
  std::vector<double> buffer(rows);
  for (int k = 0; k < cols; ++k) {
    for (int i = 0; i < rows; ++i) buffer[i] = x(i, k);
    const double mean = SortedSum(buffer) / rows;
    for (int i = 0; i < rows; ++i) buffer[i] = (x(i, k) - mean) * (x(i, k) - mean);
    const double inv = 1.0 / std::sqrt(SortedSum(buffer) / rows + kNormEpsilon);
    result.inv_std[k] = inv;
    for (int i = 0; i < rows; ++i) result.out(i, k) = (x(i, k) - mean) * inv;
  }
  return result;
}

RowMatrix StandardizeBackward(const RowMatrix& upstream,
                              const ForwardCache::Standardized& norm) {
  if (upstream.rows() == 0) return upstream;
  const Eigen::RowVectorXd mean_grad = upstream.colwise().mean();
  const Eigen::RowVectorXd mean_grad_out =
      upstream.cwiseProduct(norm.out).colwise().mean();
  RowMatrix centered = upstream.rowwise() - mean_grad;
  centered -= norm.out * mean_grad_out.asDiagonal();
  return centered * norm.inv_std.asDiagonal();
}

void Relu(RowMatrix& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double& v = x.data()[i];
    v = v > 0.0 ? v : 0.0;
  }
}

// out.row(i) += x.row(i) * w_t, with the sum over input channels taken in a
// fixed order so each output row depends on its own input row only. Output
// channels are processed in register-sized chunks.
void AccumulateRows(const RowMatrix& x, const RowMatrix& w_t, RowMatrix& out) {
  constexpr int kChunk = 16;
  const int in = static_cast<int>(w_t.rows());
  const int width = static_cast<int>(w_t.cols());
  const double* w = w_t.data();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    double* o = out.row(i).data();
    const double* xi = x.row(i).data();
    int k0 = 0;
    for (; k0 + kChunk <= width; k0 += kChunk) {
      double acc[kChunk];
      for (int k = 0; k < kChunk; ++k) acc[k] = o[k0 + k];
      for (int j = 0; j < in; ++j) {
        const double xv = xi[j];
        if (xv == 0.0) continue;
        const double* wj = w + static_cast<Eigen::Index>(j) * width + k0;
        for (int k = 0; k < kChunk; ++k) acc[k] += xv * wj[k];
      }
      for (int k = 0; k < kChunk; ++k) o[k0 + k] = acc[k];
    }
    for (int j = 0; j < in && k0 < width; ++j) {
      const double xv = xi[j];
      if (xv == 0.0) continue;
      const double* wj = w + static_cast<Eigen::Index>(j) * width;
      for (int k = k0; k < width; ++k) o[k] += xv * wj[k];
    }
  }
}

// Neighbor sums with every target's terms visited in an order determined by
// (coefficient, source row) values alone.
RowMatrix Aggregate(const Adjacency& adjacency, const RowMatrix& source) {
  const int width = static_cast<int>(source.cols());
  RowMatrix out = RowMatrix::Zero(static_cast<Eigen::Index>(adjacency.size()), width);
  std::vector<std::pair<int, double>> order;
  for (size_t t = 0; t < adjacency.size(); ++t) {
    order = adjacency[t];
    std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second < b.second;
      const double* ra = source.row(a.first).data();
      const double* rb = source.row(b.first).data();
      return std::lexicographical_compare(ra, ra + width, rb, rb + width);
    });
    double* o = out.row(t).data();
    for (const auto& [src, coef] : order) {
      const double* s = source.row(src).data();
      for (int k = 0; k < width; ++k) o[k] += coef * s[k];
    }
  }
  return out;
}

RowMatrix Linear(const RowMatrix& x, const RowMatrix& w_t) {
  RowMatrix out = RowMatrix::Zero(x.rows(), w_t.cols());
  AccumulateRows(x, w_t, out);
  return out;
}

void CheckShape(const BipartiteGraph& graph) {
  if (graph.var_features.cols() != kVarFeatureWidth ||
      graph.cons_features.cols() != kConsFeatureWidth) {
    throw Error(ErrorCode::kShapeMismatch,
                "graph feature widths must be " + std::to_string(kVarFeatureWidth) +
                    " and " + std::to_string(kConsFeatureWidth));
  }
  for (const GraphEdge& e : graph.edges) {
    if (e.var < 0 || e.var >= graph.num_vars() || e.cons < 0 ||
        e.cons >= graph.num_cons()) {
      throw Error(ErrorCode::kShapeMismatch, "edge index out of range");
    }
  }
}

Eigen::Map<RowMatrix> GradientBlock(std::span<double> gradient, int64_t offset, int rows,
                                    int cols) {
  return Eigen::Map<RowMatrix>(gradient.data() + offset, rows, cols);
}

}  // namespace

int64_t EncoderModel::ParameterCount(int hidden) {
  const int64_t h = hidden;
  return h * kVarFeatureWidth + h * kConsFeatureWidth + 2 * kNumLayers * h * h + 3 * h +
         kEmbeddingWidth * 2 * h;
}

EncoderModel::EncoderModel(int hidden, std::vector<double> params)
    : hidden_(hidden), params_(std::move(params)) {
  if (hidden <= 0 || static_cast<int64_t>(params_.size()) != ParameterCount(hidden)) {
    throw Error(ErrorCode::kShapeMismatch,
                "parameter vector does not match hidden width " + std::to_string(hidden));
  }
  const int64_t h = hidden;
  var_lift_ = 0;
  cons_lift_ = var_lift_ + h * kVarFeatureWidth;
  theta1_ = cons_lift_ + h * kConsFeatureWidth;
  theta2_ = theta1_ + kNumLayers * h * h;
  scale_ = theta2_ + kNumLayers * h * h;
  shift_ = scale_ + h;
  attention_ = shift_ + h;
  projection_ = attention_ + h;
}

EncoderModel InitModel(uint64_t seed, int hidden) {
  EncoderModel model(hidden, std::vector<double>(EncoderModel::ParameterCount(hidden)));
  Rng rng(seed);
  std::span<double> p = model.mutable_params();
  auto fill = [&](int64_t offset, int fan_out, int fan_in) {
    const double s = std::sqrt(6.0 / (fan_in + fan_out));
    for (int64_t i = 0; i < static_cast<int64_t>(fan_out) * fan_in; ++i) {
      p[offset + i] = rng.Uniform(-s, s);
    }
  };
  fill(model.var_lift_offset(), hidden, kVarFeatureWidth);
  fill(model.cons_lift_offset(), hidden, kConsFeatureWidth);
  for (int l = 0; l < kNumLayers; ++l) {
    fill(model.theta1_offset(l), hidden, hidden);
    fill(model.theta2_offset(l), hidden, hidden);
  }
  for (int k = 0; k < hidden; ++k) {
    p[model.norm_scale_offset() + k] = 1.0;
    p[model.norm_shift_offset() + k] = 0.0;
  }
  fill(model.attention_offset(), 1, hidden);
  fill(model.projection_offset(), kEmbeddingWidth, 2 * hidden);
  return model;
}

Embedding ForwardEmbed(const EncoderModel& model, const BipartiteGraph& graph,
                       ForwardCache* cache) {
  CheckShape(graph);
  const int n = graph.num_vars();
  const int m = graph.num_cons();
  const int h = model.hidden();
  Adjacency var_adj(n), cons_adj(m);
  for (const GraphEdge& e : graph.edges) {
    var_adj[e.var].emplace_back(e.cons, e.coef);
    cons_adj[e.cons].emplace_back(e.var, e.coef);
  }

  RowMatrix v = Linear(graph.var_features, model.var_lift().transpose());
  RowMatrix c = Linear(graph.cons_features, model.cons_lift().transpose());
  if (cache) {
    cache->var_input = v;
    cache->cons_input = c;
    cache->layers.clear();
  }
  for (int l = 0; l < kNumLayers; ++l) {
    const RowMatrix theta1_t = model.theta1(l).transpose();
    const RowMatrix theta2_t = model.theta2(l).transpose();
    ForwardCache::Layer layer;

    RowMatrix cons_message = Aggregate(cons_adj, v);
    RowMatrix pre = Linear(c, theta1_t);
    AccumulateRows(cons_message, theta2_t, pre);
    ForwardCache::Standardized cons_norm = Standardize(pre);
    RowMatrix c_next = cons_norm.out;
    Relu(c_next);

    RowMatrix var_message = Aggregate(var_adj, c_next);
    pre = Linear(v, theta1_t);
    AccumulateRows(var_message, theta2_t, pre);
    ForwardCache::Standardized var_norm = Standardize(pre);
    RowMatrix v_next = var_norm.out;
    Relu(v_next);

    if (cache) {
      layer.cons_in = std::move(c);
      layer.var_in = std::move(v);
      layer.cons_message = std::move(cons_message);
      layer.var_message = std::move(var_message);
      layer.cons_norm = std::move(cons_norm);
      layer.var_norm = std::move(var_norm);
      cache->layers.push_back(std::move(layer));
    }
    c = std::move(c_next);
    v = std::move(v_next);
  }

  const int nodes = n + m;
  RowMatrix stacked(nodes, h);
  stacked.topRows(n) = v;
  stacked.bottomRows(m) = c;
  ForwardCache::Standardized final_norm = Standardize(stacked);
  RowMatrix y = final_norm.out;
  const auto scale = model.norm_scale();
  const auto shift = model.norm_shift();
  for (int i = 0; i < nodes; ++i) {
    for (int k = 0; k < h; ++k) y(i, k) = y(i, k) * scale[k] + shift[k];
  }

  Eigen::VectorXd pooled(2 * h);
  std::vector<int> argmax(h, 0);
  for (int k = 0; k < h; ++k) {
    double best = y(0, k);
    for (int i = 1; i < nodes; ++i) {
      if (y(i, k) > best) {
        best = y(i, k);
        argmax[k] = i;
      }
    }
    pooled[k] = best;
  }
  const auto attention = model.attention();
  std::vector<double> scores(nodes);
  for (int i = 0; i < nodes; ++i) {
    double s = 0.0;
    for (int k = 0; k < h; ++k) s += attention[k] * y(i, k);
    scores[i] = s;
  }
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> buffer(nodes);
  for (int i = 0; i < nodes; ++i) buffer[i] = std::exp(scores[i] - top);
  Eigen::VectorXd weights(nodes);
  for (int i = 0; i < nodes; ++i) weights[i] = buffer[i];
  const double total = SortedSum(buffer);
  for (int i = 0; i < nodes; ++i) weights[i] /= total;
  for (int k = 0; k < h; ++k) {
    for (int i = 0; i < nodes; ++i) buffer[i] = weights[i] * y(i, k);
    pooled[h + k] = SortedSum(buffer);
  }

  const auto projection = model.projection();
  Embedding out(kEmbeddingWidth);
  for (int o = 0; o < kEmbeddingWidth; ++o) {
    double s = 0.0;
    for (int j = 0; j < 2 * h; ++j) s += projection(o, j) * pooled[j];
    out[o] = s;
  }

  if (cache) {
    cache->final_norm = std::move(final_norm);
    cache->pooled_nodes = std::move(y);
    cache->argmax = std::move(argmax);
    cache->weights = std::move(weights);
    cache->pooled = std::move(pooled);
  }
  return out;
}

void BackwardEmbed(const EncoderModel& model, const BipartiteGraph& graph,
                   const ForwardCache& cache, std::span<const double> upstream,
                   std::span<double> gradient) {
  const int n = graph.num_vars();
  const int m = graph.num_cons();
  const int h = model.hidden();
  const int nodes = n + m;
  const Eigen::Map<const Eigen::VectorXd> d_out(upstream.data(), kEmbeddingWidth);

  GradientBlock(gradient, model.projection_offset(), kEmbeddingWidth, 2 * h) +=
      d_out * cache.pooled.transpose();
  const Eigen::VectorXd d_pooled = model.projection().transpose() * d_out;

  const RowMatrix& y = cache.pooled_nodes;
  RowMatrix d_y = RowMatrix::Zero(nodes, h);
  for (int k = 0; k < h; ++k) d_y(cache.argmax[k], k) += d_pooled[k];
  const Eigen::VectorXd d_att = d_pooled.tail(h);
  d_y += cache.weights * d_att.transpose();
  const Eigen::VectorXd d_weights = y * d_att;
  const Eigen::VectorXd d_scores =
      (cache.weights.array() * (d_weights.array() - cache.weights.dot(d_weights))).matrix();
  Eigen::Map<Eigen::VectorXd>(gradient.data() + model.attention_offset(), h) +=
      y.transpose() * d_scores;
  d_y += d_scores * model.attention().transpose();

  const RowMatrix& normed = cache.final_norm.out;
  Eigen::Map<Eigen::VectorXd>(gradient.data() + model.norm_scale_offset(), h) +=
      d_y.cwiseProduct(normed).colwise().sum().transpose();
  Eigen::Map<Eigen::VectorXd>(gradient.data() + model.norm_shift_offset(), h) +=
      d_y.colwise().sum().transpose();
  const RowMatrix d_stacked =
      StandardizeBackward(d_y * model.norm_scale().asDiagonal(), cache.final_norm);

  RowMatrix d_v = d_stacked.topRows(n);
  RowMatrix d_c = d_stacked.bottomRows(m);
  for (int l = kNumLayers - 1; l >= 0; --l) {
    const ForwardCache::Layer& layer = cache.layers[l];
    auto d_theta1 = GradientBlock(gradient, model.theta1_offset(l), h, h);
    auto d_theta2 = GradientBlock(gradient, model.theta2_offset(l), h, h);

    RowMatrix d_pre = d_v.cwiseProduct(
        (layer.var_norm.out.array() > 0.0).cast<double>().matrix());
    d_pre = StandardizeBackward(d_pre, layer.var_norm);
    d_theta1 += d_pre.transpose() * layer.var_in;
    d_theta2 += d_pre.transpose() * layer.var_message;
    RowMatrix d_v_prev = d_pre * model.theta1(l);
    RowMatrix d_message = d_pre * model.theta2(l);
    for (const GraphEdge& e : graph.edges) d_c.row(e.cons) += e.coef * d_message.row(e.var);

    d_pre = d_c.cwiseProduct((layer.cons_norm.out.array() > 0.0).cast<double>().matrix());
    d_pre = StandardizeBackward(d_pre, layer.cons_norm);
    d_theta1 += d_pre.transpose() * layer.cons_in;
    d_theta2 += d_pre.transpose() * layer.cons_message;
    RowMatrix d_c_prev = d_pre * model.theta1(l);
    d_message = d_pre * model.theta2(l);
    for (const GraphEdge& e : graph.edges) d_v_prev.row(e.var) += e.coef * d_message.row(e.cons);

    d_v = std::move(d_v_prev);
    d_c = std::move(d_c_prev);
  }
  GradientBlock(gradient, model.var_lift_offset(), h, kVarFeatureWidth) +=
      d_v.transpose() * graph.var_features;
  GradientBlock(gradient, model.cons_lift_offset(), h, kConsFeatureWidth) +=
      d_c.transpose() * graph.cons_features;
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return sum;
}

double TripletLoss(std::span<const double> anchor, std::span<const double> positive,
                   std::span<const double> negative, double alpha) {
  return std::max(0.0, SquaredDistance(anchor, positive) -
                           SquaredDistance(anchor, negative) + alpha);
}

}  // namespace milpsim

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

#ifndef MILPSIM_ENCODER_H_
#define MILPSIM_ENCODER_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "milpsim/featurize.h"

namespace milpsim {

inline constexpr int kHiddenWidth = 64;
inline constexpr int kNumLayers = 4;
inline constexpr int kEmbeddingWidth = 256;
inline constexpr double kNormEpsilon = 1e-5;

using Embedding = std::vector<double>;

// Parameters of the graph encoder, stored as one flat vector in the order
//   var_lift        H x 5
//   cons_lift       H x 4
//   theta1[l]       H x H   for l = 0..3
//   theta2[l]       H x H   for l = 0..3
//   norm_scale      H
//   norm_shift      H
//   attention       H
//   projection      256 x 2H
// with every matrix row-major.
//
// Forward pass, with Std() standardizing each channel over the nodes of one
// graph (population variance, epsilon 1e-5):
//   V = X_v var_lift^T,  C = X_c cons_lift^T
//   per layer:
//     C <- relu(Std(C theta1^T + (sum_{v in N(c)} e_vc V_v) theta2^T))
//     V <- relu(Std(V theta1^T + (sum_{c in N(v)} e_vc C_c) theta2^T))
//   Y = Std([V; C]) * norm_scale + norm_shift
//   g = [max_i Y_i ; sum_i softmax(Y attention)_i Y_i]
//   embedding = projection g
class EncoderModel {
 public:
  using MatrixView = Eigen::Map<RowMatrix>;
  using ConstMatrixView = Eigen::Map<const RowMatrix>;
  using VectorView = Eigen::Map<Eigen::VectorXd>;
  using ConstVectorView = Eigen::Map<const Eigen::VectorXd>;

  // Throws Error(kShapeMismatch) if params has the wrong length.
  EncoderModel(int hidden, std::vector<double> params);

  static int64_t ParameterCount(int hidden);

  int hidden() const { return hidden_; }
  std::span<const double> params() const { return params_; }
  std::span<double> mutable_params() { return params_; }

  ConstMatrixView var_lift() const { return Matrix(var_lift_, hidden_, kVarFeatureWidth); }
  ConstMatrixView cons_lift() const { return Matrix(cons_lift_, hidden_, kConsFeatureWidth); }
  ConstMatrixView theta1(int layer) const {
    return Matrix(theta1_ + layer * hidden_ * hidden_, hidden_, hidden_);
  }
  ConstMatrixView theta2(int layer) const {
    return Matrix(theta2_ + layer * hidden_ * hidden_, hidden_, hidden_);
  }
  ConstVectorView norm_scale() const { return Vector(scale_, hidden_); }
  ConstVectorView norm_shift() const { return Vector(shift_, hidden_); }
  ConstVectorView attention() const { return Vector(attention_, hidden_); }
  ConstMatrixView projection() const {
    return Matrix(projection_, kEmbeddingWidth, 2 * hidden_);
  }

  // Offsets of each block inside params(), for gradient bookkeeping.
  int64_t var_lift_offset() const { return var_lift_; }
  int64_t cons_lift_offset() const { return cons_lift_; }
  int64_t theta1_offset(int layer) const { return theta1_ + layer * hidden_ * hidden_; }
  int64_t theta2_offset(int layer) const { return theta2_ + layer * hidden_ * hidden_; }
  int64_t norm_scale_offset() const { return scale_; }
  int64_t norm_shift_offset() const { return shift_; }
  int64_t attention_offset() const { return attention_; }
  int64_t projection_offset() const { return projection_; }

  friend bool operator==(const EncoderModel& a, const EncoderModel& b) {
    return a.hidden_ == b.hidden_ && a.params_ == b.params_;
  }

 private:
  ConstMatrixView Matrix(int64_t offset, int rows, int cols) const {
    return ConstMatrixView(params_.data() + offset, rows, cols);
  }
  ConstVectorView Vector(int64_t offset, int size) const {
    return ConstVectorView(params_.data() + offset, size);
  }

  int hidden_;
  std::vector<double> params_;
  int64_t var_lift_ = 0, cons_lift_ = 0, theta1_ = 0, theta2_ = 0;
  int64_t scale_ = 0, shift_ = 0, attention_ = 0, projection_ = 0;
};

// Every matrix uniform in [-s, s] with s = sqrt(6 / (fan_in + fan_out));
// the attention vector is treated as a 1 x H matrix. Scale 1, shift 0.
EncoderModel InitModel(uint64_t seed, int hidden = kHiddenWidth);

// Intermediate values kept for the backward pass.
struct ForwardCache {
  struct Standardized {
    RowMatrix out;
    Eigen::VectorXd inv_std;
  };
  struct Layer {
    RowMatrix cons_in, var_in;
    RowMatrix cons_message, var_message;
    Standardized cons_norm, var_norm;
  };
  RowMatrix var_input, cons_input;
  std::vector<Layer> layers;
  Standardized final_norm;
  RowMatrix pooled_nodes;  // Y
  std::vector<int> argmax;
  Eigen::VectorXd weights;  // softmax over nodes
  Eigen::VectorXd pooled;   // g
};

// Throws Error(kShapeMismatch) unless the graph has 5 variable and 4
// constraint feature columns. The result is bit-identical under any
// relabeling of variables or constraints.
Embedding ForwardEmbed(const EncoderModel& model, const BipartiteGraph& graph,
                       ForwardCache* cache = nullptr);

// Accumulates d(embedding . upstream)/d(params) into gradient.
void BackwardEmbed(const EncoderModel& model, const BipartiteGraph& graph,
                   const ForwardCache& cache, std::span<const double> upstream,
                   std::span<double> gradient);

double SquaredDistance(std::span<const double> a, std::span<const double> b);

// max(0, |a - p|^2 - |a - n|^2 + alpha).
double TripletLoss(std::span<const double> anchor, std::span<const double> positive,
                   std::span<const double> negative, double alpha);

}  // namespace milpsim

#endif  // MILPSIM_ENCODER_H_

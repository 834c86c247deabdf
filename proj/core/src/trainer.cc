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

#include "milpsim/trainer.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "milpsim/error.h"

namespace milpsim {
namespace {

struct Slots {
  std::vector<const BipartiteGraph*> graphs;
  std::vector<std::array<int, 3>> triplets;
};

Slots Deduplicate(const TripletBatch& batch) {
  Slots slots;
  std::map<const BipartiteGraph*, int> index;
  auto slot = [&](const BipartiteGraph* g) {
    auto [it, inserted] = index.emplace(g, static_cast<int>(slots.graphs.size()));
    if (inserted) slots.graphs.push_back(g);
    return it->second;
  };
  for (const Triplet& t : batch) {
    slots.triplets.push_back({slot(t.anchor), slot(t.positive), slot(t.negative)});
  }
  return slots;
}

constexpr int kMaxStepHalvings = 12;
constexpr double kGradientFloor = 1e-3;

// ReLU on/off states, max-pool winners and hinge states of every graph in the
// batch; finite differences are only meaningful while this stays fixed.
double LossAndPattern(const EncoderModel& model, const TripletBatch& batch, double alpha,
                      std::vector<uint8_t>* pattern_out) {
  const Slots slots = Deduplicate(batch);
  std::vector<uint8_t>& pattern = *pattern_out;
  pattern.clear();
  std::vector<Embedding> embeddings;
  ForwardCache cache;
  for (const BipartiteGraph* g : slots.graphs) {
    embeddings.push_back(ForwardEmbed(model, *g, &cache));
    for (const ForwardCache::Layer& layer : cache.layers) {
      for (const RowMatrix* x : {&layer.cons_norm.out, &layer.var_norm.out}) {
        for (Eigen::Index k = 0; k < x->size(); ++k) pattern.push_back(x->data()[k] > 0.0);
      }
    }
    for (int winner : cache.argmax) {
      for (int shift = 0; shift < 32; shift += 8) pattern.push_back((winner >> shift) & 0xff);
    }
  }
  double total = 0.0;
  for (const auto& [a, p, n] : slots.triplets) {
    const double loss = TripletLoss(embeddings[a], embeddings[p], embeddings[n], alpha);
    pattern.push_back(loss > 0.0);
    total += loss;
  }
  return total / batch.size();
}

void RequireBatch(const TripletBatch& batch) {
  if (batch.empty()) throw Error(ErrorCode::kInvalidArgument, "empty triplet batch");
}

}  // namespace

BatchGradient ComputeBatchGradient(const EncoderModel& model, const TripletBatch& batch,
                                   double alpha) {
  RequireBatch(batch);
  const Slots slots = Deduplicate(batch);
  const size_t count = slots.graphs.size();
  std::vector<ForwardCache> caches(count);
  std::vector<Embedding> embeddings(count);
  for (size_t s = 0; s < count; ++s) {
    embeddings[s] = ForwardEmbed(model, *slots.graphs[s], &caches[s]);
  }

  BatchGradient result;
  std::vector<std::vector<double>> upstream(count, std::vector<double>(kEmbeddingWidth, 0.0));
  const double weight = 1.0 / batch.size();
  double total = 0.0;
  for (const auto& [a, p, n] : slots.triplets) {
    const Embedding& ea = embeddings[a];
    const Embedding& ep = embeddings[p];
    const Embedding& en = embeddings[n];
    const double slack = SquaredDistance(ea, ep) - SquaredDistance(ea, en) + alpha;
    result.slack.push_back(slack);
    if (slack <= 0.0) continue;
    total += slack;
    for (int k = 0; k < kEmbeddingWidth; ++k) {
      upstream[a][k] += weight * 2.0 * (en[k] - ep[k]);
      upstream[p][k] += weight * 2.0 * (ep[k] - ea[k]);
      upstream[n][k] += weight * 2.0 * (ea[k] - en[k]);
    }
  }
  result.mean_loss = total * weight;
  result.gradient.assign(model.params().size(), 0.0);
  for (size_t s = 0; s < count; ++s) {
    BackwardEmbed(model, *slots.graphs[s], caches[s], upstream[s], result.gradient);
  }
  return result;
}

double BatchLoss(const EncoderModel& model, const TripletBatch& batch, double alpha) {
  RequireBatch(batch);
  const Slots slots = Deduplicate(batch);
  std::vector<Embedding> embeddings;
  for (const BipartiteGraph* g : slots.graphs) embeddings.push_back(ForwardEmbed(model, *g));
  double total = 0.0;
  for (const auto& [a, p, n] : slots.triplets) {
    total += TripletLoss(embeddings[a], embeddings[p], embeddings[n], alpha);
  }
  return total / batch.size();
}

double TrainStep(EncoderModel& model, AdamState& state, const TripletBatch& batch,
                 double alpha, double lr) {
  const BatchGradient grad = ComputeBatchGradient(model, batch, alpha);
  if (!std::isfinite(grad.mean_loss)) {
    throw Error(ErrorCode::kNonFiniteLoss, "triplet loss is not finite");
  }
  for (double g : grad.gradient) {
    if (!std::isfinite(g)) throw Error(ErrorCode::kNonFiniteLoss, "gradient is not finite");
  }
  std::span<double> params = model.mutable_params();
  if (state.first.size() != params.size()) {
    state.first.assign(params.size(), 0.0);
    state.second.assign(params.size(), 0.0);
    state.step = 0;
  }
  ++state.step;
  const bool zero = std::all_of(grad.gradient.begin(), grad.gradient.end(),
                                [](double g) { return g == 0.0; });
  const double correction1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double correction2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (size_t i = 0; i < params.size(); ++i) {
    const double g = grad.gradient[i];
    state.first[i] = state.beta1 * state.first[i] + (1.0 - state.beta1) * g;
    state.second[i] = state.beta2 * state.second[i] + (1.0 - state.beta2) * g * g;
    if (zero) continue;
    const double m_hat = state.first[i] / correction1;
    const double v_hat = state.second[i] / correction2;
    params[i] -= lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
  return grad.mean_loss;
}

double GradientCheck(const EncoderModel& model, const TripletBatch& batch, double alpha,
                     double h) {
  const BatchGradient analytic = ComputeBatchGradient(model, batch, alpha);
  for (double slack : analytic.slack) {
    if (std::abs(slack) <= 1e-3) {
      throw Error(ErrorCode::kDegenerateBatch, "a triplet hinge is within 1e-3 of its kink");
    }
  }
  if (analytic.mean_loss <= 0.0) {
    throw Error(ErrorCode::kDegenerateBatch, "every triplet hinge is inactive");
  }
  EncoderModel probe = model;
  std::vector<uint8_t> base, pattern;
  LossAndPattern(probe, batch, alpha, &base);
  std::span<double> params = probe.mutable_params();
  double worst = 0.0;
  for (size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    double step = h;
    double numeric = 0.0;
    for (int attempt = 0; attempt < kMaxStepHalvings; ++attempt, step *= 0.5) {
      bool smooth = true;
      double f[4];
      const double offsets[4] = {2.0, 1.0, -1.0, -2.0};
      for (int q = 0; q < 4; ++q) {
        params[i] = saved + offsets[q] * step;
        f[q] = LossAndPattern(probe, batch, alpha, &pattern);
        smooth = smooth && pattern == base;
      }
      params[i] = saved;
      numeric = (-f[0] + 8.0 * f[1] - 8.0 * f[2] + f[3]) / (12.0 * step);
      if (smooth) break;
    }
    const double a = analytic.gradient[i];
    const double scale = std::max({std::abs(a), std::abs(numeric), kGradientFloor});
    worst = std::max(worst, std::abs(a - numeric) / scale);
  }
  return worst;
}

}  // namespace milpsim

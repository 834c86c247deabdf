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

#ifndef MILPSIM_TRAINER_H_
#define MILPSIM_TRAINER_H_

#include <cstdint>
#include <vector>

#include "milpsim/encoder.h"

namespace milpsim {

struct Triplet {
  const BipartiteGraph* anchor = nullptr;
  const BipartiteGraph* positive = nullptr;
  const BipartiteGraph* negative = nullptr;
};

using TripletBatch = std::vector<Triplet>;

inline constexpr double kTripletMargin = 0.1;
inline constexpr double kLearningRate = 1e-3;

struct AdamState {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int64_t step = 0;
  std::vector<double> first;
  std::vector<double> second;
};

struct BatchGradient {
  double mean_loss = 0.0;
  std::vector<double> gradient;  // d(mean loss)/d(params)
  // Per-triplet margin slack: |a-p|^2 - |a-n|^2 + alpha.
  std::vector<double> slack;
};

// Graphs shared between triplets (same pointer) are embedded once.
BatchGradient ComputeBatchGradient(const EncoderModel& model, const TripletBatch& batch,
                                   double alpha);

double BatchLoss(const EncoderModel& model, const TripletBatch& batch, double alpha);

// One Adam step on the mean triplet loss. Returns the loss before the update.
// A batch with every hinge inactive advances the moments but leaves the
// parameters unchanged.
// Throws Error(kNonFiniteLoss) if the loss or any gradient entry is not
// finite; the model is left untouched in that case.
double TrainStep(EncoderModel& model, AdamState& state, const TripletBatch& batch,
                 double alpha, double lr);

// Largest relative error |g - d| / max(|g|, |d|, 1e-3) between the analytic
// gradient g and the fourth-order central difference d with points at +-h and
// +-2h, over every parameter. A difference whose points switch a ReLU, a
// max-pool winner or a hinge is retaken with the step halved, up to 12 times. Throws
// Error(kDegenerateBatch) if any triplet's hinge slack is within 1e-3 of 0.
double GradientCheck(const EncoderModel& model, const TripletBatch& batch, double alpha,
                     double h = 1e-5);

}  // namespace milpsim

#endif  // MILPSIM_TRAINER_H_

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

#include <cmath>
#include <cstring>
#include <vector>

#include <gtest/gtest.h>

#include "milpsim/checkpoint.h"
#include "milpsim/encoder.h"
#include "milpsim/error.h"
#include "milpsim/featurize.h"
#include "milpsim/generate.h"
#include "milpsim/trainer.h"
#include "oracles/reference_encoder.h"
#include "support/test_util.h"

namespace milpsim {
namespace {

using testing::PermuteInstance;
using testing::RandomMixedInstance;
using testing::RandomPermutation;
using testing::ThrownCode;

bool BitIdentical(const Embedding& a, const Embedding& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST(InitModel, ShapesAndDeterminism) {
  const EncoderModel a = InitModel(3);
  EXPECT_EQ(a.hidden(), kHiddenWidth);
  const int64_t h = kHiddenWidth;
  EXPECT_EQ(EncoderModel::ParameterCount(kHiddenWidth),
            h * 5 + h * 4 + 2 * kNumLayers * h * h + 3 * h + kEmbeddingWidth * 2 * h);
  EXPECT_EQ(static_cast<int64_t>(a.params().size()), EncoderModel::ParameterCount(kHiddenWidth));
  EXPECT_EQ(a.var_lift().rows(), h);
  EXPECT_EQ(a.var_lift().cols(), 5);
  EXPECT_EQ(a.cons_lift().cols(), 4);
  EXPECT_EQ(a.projection().rows(), kEmbeddingWidth);
  EXPECT_EQ(a.projection().cols(), 2 * h);
  EXPECT_EQ(a, InitModel(3));
  EXPECT_FALSE(a == InitModel(4));
  for (int k = 0; k < h; ++k) {
    EXPECT_EQ(a.norm_scale()[k], 1.0);
    EXPECT_EQ(a.norm_shift()[k], 0.0);
  }
}

TEST(InitModel, GlorotRange) {
  const EncoderModel m = InitModel(5);
  const double s_lift = std::sqrt(6.0 / (5 + kHiddenWidth));
  const double s_theta = std::sqrt(6.0 / (2 * kHiddenWidth));
  const double s_proj = std::sqrt(6.0 / (2 * kHiddenWidth + kEmbeddingWidth));
  EXPECT_LE(m.var_lift().cwiseAbs().maxCoeff(), s_lift);
  EXPECT_LE(m.theta1(2).cwiseAbs().maxCoeff(), s_theta);
  EXPECT_GT(m.theta1(2).cwiseAbs().maxCoeff(), 0.9 * s_theta);
  EXPECT_LE(m.projection().cwiseAbs().maxCoeff(), s_proj);
}

TEST(Forward, MatchesReferenceImplementation) {
  const EncoderModel model = InitModel(21);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const BipartiteGraph g =
        ExtractBipartite(GenerateInstance(Family::kPlacement, 40, 16, seed).instance);
    const Embedding e = ForwardEmbed(model, g);
    const std::vector<double> ref = oracle::ReferenceEmbed(model, g);
    ASSERT_EQ(e.size(), ref.size());
    for (size_t k = 0; k < e.size(); ++k) {
      EXPECT_NEAR(e[k], ref[k], 1e-10 * (1.0 + std::abs(ref[k]))) << k;
    }
  }
  const BipartiteGraph mixed = ExtractBipartite(RandomMixedInstance(4, 10, 6));
  const Embedding e = ForwardEmbed(InitModel(2, 8), mixed);
  const std::vector<double> ref = oracle::ReferenceEmbed(InitModel(2, 8), mixed);
  for (size_t k = 0; k < e.size(); ++k) EXPECT_NEAR(e[k], ref[k], 1e-10 * (1.0 + std::abs(ref[k])));
}

TEST(Forward, PermutationInvariantToTheBit) {
  const EncoderModel model = InitModel(1);
  Rng rng(99);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const MilpInstance inst = RandomMixedInstance(seed, 6 + seed % 7, 2 + seed % 5);
    const Embedding base = ForwardEmbed(model, ExtractBipartite(inst));
    for (int p = 0; p < 5; ++p) {
      const MilpInstance permuted =
          PermuteInstance(inst, RandomPermutation(inst.num_vars(), rng),
                          RandomPermutation(inst.num_rows(), rng));
      EXPECT_TRUE(BitIdentical(base, ForwardEmbed(model, ExtractBipartite(permuted))));
    }
  }
}

TEST(Forward, SingleVariableNoConstraints) {
  BipartiteGraph g;
  g.var_features = RowMatrix::Zero(1, kVarFeatureWidth);
  g.var_features(0, 0) = 1.0;
  g.var_features(0, 4) = 1.0;
  g.cons_features = RowMatrix::Zero(0, kConsFeatureWidth);
  const Embedding e = ForwardEmbed(InitModel(0), g);
  ASSERT_EQ(e.size(), static_cast<size_t>(kEmbeddingWidth));
  for (double v : e) EXPECT_TRUE(std::isfinite(v));
}

TEST(Forward, ShapeMismatch) {
  BipartiteGraph g;
  g.var_features = RowMatrix::Zero(2, 4);
  g.cons_features = RowMatrix::Zero(1, kConsFeatureWidth);
  EXPECT_EQ(ThrownCode([&] { ForwardEmbed(InitModel(0), g); }), ErrorCode::kShapeMismatch);
  EXPECT_EQ(ThrownCode([] { EncoderModel(8, std::vector<double>(3)); }), ErrorCode::kShapeMismatch);
}

TEST(Forward, Deterministic) {
  const BipartiteGraph g = ExtractBipartite(GenerateInstance(Family::kCover, 20, 10, 7).instance);
  const EncoderModel model = InitModel(11);
  EXPECT_TRUE(BitIdentical(ForwardEmbed(model, g), ForwardEmbed(model, g)));
}

TEST(TripletLoss, Examples) {
  const std::vector<double> zero = {0.0, 0.0}, far = {0.4, 0.0};
  const std::vector<double> p = {0.5, 0.0}, n = {0.0, 0.2};
  EXPECT_DOUBLE_EQ(TripletLoss(zero, zero, zero, 0.1), 0.1);
  EXPECT_EQ(TripletLoss(zero, zero, far, 0.1), 0.0);
  EXPECT_NEAR(TripletLoss(zero, p, n, 0.1), 0.31, 1e-15);
}

TEST(TripletLoss, NonNegativeAndZeroExactlyWhenSeparated) {
  Rng rng(12);
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> a(3), p(3), n(3);
    for (int k = 0; k < 3; ++k) {
      a[k] = rng.Uniform(-1, 1);
      p[k] = rng.Uniform(-1, 1);
      n[k] = rng.Uniform(-1, 1);
    }
    const double alpha = rng.Uniform(0, 0.5);
    const double loss = TripletLoss(a, p, n, alpha);
    EXPECT_GE(loss, 0.0);
    EXPECT_EQ(loss == 0.0, SquaredDistance(a, n) >= SquaredDistance(a, p) + alpha);
  }
}

struct TripletFixture {
  std::vector<BipartiteGraph> graphs;
  TripletBatch batch;
};

// One triplet over three small generated graphs, ordered so the hinge is
// active with slack well away from the kink.
TripletFixture ActiveTriplet(const EncoderModel& model, uint64_t seed, double alpha) {
  TripletFixture f;
  for (uint64_t k = 0; k < 3; ++k) {
    f.graphs.push_back(ExtractBipartite(RandomMixedInstance(seed * 3 + k, 5, 3)));
  }
  f.batch = {{&f.graphs[0], &f.graphs[1], &f.graphs[2]}};
  const double slack = ComputeBatchGradient(model, f.batch, alpha).slack[0];
  if (slack < 1e-2) std::swap(f.batch[0].positive, f.batch[0].negative);
  return f;
}

TEST(TrainStep, InactiveBatchLeavesParameters) {
  EncoderModel model = InitModel(4, 8);
  const BipartiteGraph g = ExtractBipartite(RandomMixedInstance(1, 5, 3));
  const BipartiteGraph h = ExtractBipartite(RandomMixedInstance(2, 5, 3));
  // a = p, so d_ap = 0; the loss is zero once d_an^2 >= alpha.
  const TripletBatch batch = {{&g, &g, &h}};
  const Embedding eg = ForwardEmbed(model, g);
  const Embedding eh = ForwardEmbed(model, h);
  const double alpha = SquaredDistance(eg, eh) / 2;
  ASSERT_GT(alpha, 0.0);
  const EncoderModel before = model;
  AdamState state;
  EXPECT_EQ(TrainStep(model, state, batch, alpha, kLearningRate), 0.0);
  EXPECT_EQ(model, before);
  EXPECT_EQ(state.step, 1);
}

TEST(TrainStep, FiftyStepsReduceLoss) {
  EncoderModel model = InitModel(6, 16);
  const TripletFixture f = ActiveTriplet(model, 6, kTripletMargin);
  AdamState state;
  std::vector<double> losses;
  for (int step = 0; step < 50; ++step) {
    const double loss = TrainStep(model, state, f.batch, kTripletMargin, kLearningRate);
    EXPECT_GE(loss, 0.0);
    losses.push_back(loss);
  }
  const double final_loss = BatchLoss(model, f.batch, kTripletMargin);
  EXPECT_LT(final_loss, losses.front());
  EXPECT_LT(losses.back(), losses.front());
  // Non-increasing overall: every loss after the first ten is below the first.
  for (size_t k = 10; k < losses.size(); ++k) EXPECT_LT(losses[k], losses.front());
}

TEST(TrainStep, NonFiniteLoss) {
  EncoderModel model = InitModel(6, 8);
  const TripletFixture f = ActiveTriplet(model, 2, kTripletMargin);
  AdamState state;
  const EncoderModel before = model;
  EXPECT_EQ(ThrownCode([&] {
              TrainStep(model, state, f.batch, std::numeric_limits<double>::infinity(),
                        kLearningRate);
            }),
            ErrorCode::kNonFiniteLoss);
  EXPECT_EQ(model, before);
}

TEST(GradientCheck, SmallModelPasses) {
  for (uint64_t seed = 0; seed < 3; ++seed) {
    const EncoderModel model = InitModel(seed, 8);
    const TripletFixture f = ActiveTriplet(model, seed, kTripletMargin);
    EXPECT_LT(GradientCheck(model, f.batch, kTripletMargin, 1e-5), 1e-4) << seed;
    EXPECT_LT(GradientCheck(model, f.batch, kTripletMargin, 2e-5), 1e-3) << seed;
  }
}

TEST(GradientCheck, InactiveBatchIsDegenerate) {
  const EncoderModel model = InitModel(1, 8);
  const BipartiteGraph g = ExtractBipartite(RandomMixedInstance(1, 5, 3));
  const TripletBatch batch = {{&g, &g, &g}};
  // slack = alpha = 0: exactly at the kink.
  EXPECT_EQ(ThrownCode([&] { GradientCheck(model, batch, 0.0); }), ErrorCode::kDegenerateBatch);
}

TEST(Checkpoint, RoundTrip) {
  const EncoderModel model = InitModel(8, 16);
  const std::string bytes = SerializeModel(model);
  EXPECT_EQ(bytes.substr(0, 8), std::string("MSIMENC\0", 8));
  EXPECT_EQ(bytes.size(), 8 + 6 * 4 + 8 + 8 * model.params().size());
  const EncoderModel back = DeserializeModel(bytes);
  EXPECT_EQ(back, model);
  EXPECT_EQ(SerializeModel(back), bytes);

  const auto path = std::filesystem::temp_directory_path() / "milpsim_checkpoint_test.bin";
  SaveModel(model, path);
  EXPECT_EQ(LoadModel(path), model);
  std::filesystem::remove(path);
}

TEST(Checkpoint, RejectsCorruptInput) {
  const std::string bytes = SerializeModel(InitModel(8, 8));
  EXPECT_EQ(ThrownCode([&] { DeserializeModel(bytes.substr(0, bytes.size() - 1)); }),
            ErrorCode::kMalformedFile);
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_EQ(ThrownCode([&] { DeserializeModel(bad_magic); }), ErrorCode::kMalformedFile);
  std::string bad_version = bytes;
  bad_version[8] = 2;
  EXPECT_EQ(ThrownCode([&] { DeserializeModel(bad_version); }), ErrorCode::kMalformedFile);
}

}  // namespace
}  // namespace milpsim

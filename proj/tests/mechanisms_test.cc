//
// Copyright 2026 The DepthGuard Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "depthguard/mechanisms.h"
#include "depthguard/random.h"
#include "depthguard/sensitivity.h"
#include "testing/status_matchers.h"

namespace depthguard {
namespace {

namespace oracle {
#include "oracles/derived_values.inc"
}  // namespace oracle

using ::depthguard::testing::IsOk;
using ::depthguard::testing::IsOkAndHolds;
using ::depthguard::testing::StatusIs;
using ::testing::DoubleEq;
using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

constexpr double kInf = std::numeric_limits<double>::infinity();

SensitivityBound Bound(double v, Norm norm = Norm::kSup) {
  return SensitivityBound{v, norm, Scope::kPoint};
}

TEST(LaplaceMechanismTest, VarianceMatchesScale) {
  SeededRandom rng(1);
  const std::vector<double> zero = {0.0};
  constexpr int kDraws = 1000000;
  double sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    auto o = LaplaceMechanism(zero, Bound(0.1, Norm::kL1), 0.5, rng);
    sq += (*o->payload)[0] * (*o->payload)[0];
  }
  const double scale = 0.1 / 0.5;
  EXPECT_NEAR(sq / kDraws, 2 * scale * scale, 0.02 * 2 * scale * scale);
}

TEST(LaplaceMechanismTest, AuditScaleAndShift) {
  ConstantNoise noise(1.5);
  auto o = LaplaceMechanism(std::vector<double>{0.3, 0.7}, Bound(0.01), 0.5,
                            noise);
  ASSERT_THAT(o, IsOk());
  EXPECT_DOUBLE_EQ(o->audit.noise_scale, 0.02);
  EXPECT_THAT(*o->payload, ElementsAre(DoubleEq(0.33), DoubleEq(0.73)));
  EXPECT_EQ(o->audit.mechanism, "laplace");
}

TEST(LaplaceMechanismTest, RejectsBadEpsilon) {
  SeededRandom rng(1);
  EXPECT_THAT(LaplaceMechanism(std::vector<double>{0}, Bound(1), 0.0, rng),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(LaplaceMechanism(std::vector<double>{0}, Bound(1), NAN, rng),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(GaussianMechanismTest, Scale) {
  EXPECT_DOUBLE_EQ(GaussianNoiseScale(0.1, 1.0, 0.05), oracle::kGaussianScale);
  ConstantNoise noise(0.0, 2.0);
  auto o = GaussianMechanism(std::vector<double>{1.0}, Bound(0.1, Norm::kL2),
                             1.0, 0.05, noise);
  ASSERT_THAT(o, IsOk());
  EXPECT_NEAR((*o->payload)[0], 1.0 + 2 * oracle::kGaussianScale, 1e-15);
  EXPECT_THAT(GaussianMechanism(std::vector<double>{1.0}, Bound(0.1), 1.0, 0.0,
                                noise),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(GaussianMechanism(std::vector<double>{1.0}, Bound(0.1), 1.0, 1.0,
                                noise),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(CandidateGridTest, RegularLayoutAndSpec) {
  auto g = CandidateGrid::Regular({-2, 0}, {2, 1}, {3, 2});
  ASSERT_THAT(g, IsOk());
  ASSERT_EQ(g->size(), 6u);
  // Last axis varies fastest.
  EXPECT_THAT(std::vector<double>(g->point(1).begin(), g->point(1).end()),
              ElementsAre(-2, 1));
  EXPECT_THAT(std::vector<double>(g->point(2).begin(), g->point(2).end()),
              ElementsAre(0, 0));
  EXPECT_TRUE(g->data_independent());
  EXPECT_DOUBLE_EQ(g->resolution(), 2.0);
  EXPECT_THAT(g->spec(), HasSubstr("3x2"));
}

TEST(CandidateGridTest, SymmetricBoundsGiveMirroredPoints) {
  auto g = CandidateGrid::Regular({-2}, {2}, {41});
  ASSERT_THAT(g, IsOk());
  for (size_t i = 0; i < g->size(); ++i) {
    EXPECT_EQ(g->point(i)[0], -g->point(g->size() - 1 - i)[0]);
  }
  EXPECT_EQ(g->point(20)[0], 0.0);
}

TEST(CandidateGridTest, Rejections) {
  EXPECT_THAT(CandidateGrid::Regular({1}, {0}, {3}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(CandidateGrid::Regular({0}, {1}, {0}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(CandidateGrid::Regular({0, 0}, {1, 1}, {10000, 10000}),
              StatusIs(absl::StatusCode::kResourceExhausted));
  EXPECT_THAT(CandidateGrid::FromPoints({{0}, {1, 2}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(PriorTest, Weights) {
  auto g = CandidateGrid::FromPoints({{0}, {1}, {2}});
  EXPECT_THAT(Prior::Uniform().Weights(*g),
              IsOkAndHolds(ElementsAre(1.0, 1.0, 1.0)));
  auto gauss = Prior::Gaussian({0.0}, 1.0);
  ASSERT_THAT(gauss, IsOk());
  auto w = gauss->Weights(*g);
  ASSERT_THAT(w, IsOk());
  EXPECT_NEAR((*w)[1] / (*w)[0], std::exp(-0.5), 1e-12);
  EXPECT_THAT(Prior::Table({1, 2})->Weights(*g),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(Prior::Gaussian({0.0}, 0.0),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ExponentialMechanismTest, TwoPointExample) {
  const std::vector<double> u = {0.5, 0.0};
  const std::vector<double> prior = {1.0, 1.0};
  auto p = ExponentialProbabilities(u, 0.1, 0.2, prior);
  ASSERT_THAT(p, IsOk());
  EXPECT_NEAR((*p)[0], oracle::kExpFirst, 1e-15);
}

TEST(ExponentialMechanismTest, DataIndependentNormalizerDropsFactorTwo) {
  const std::vector<double> u = {0.5, 0.0};
  const std::vector<double> prior = {1.0, 1.0};
  auto p = ExponentialProbabilities(u, 0.1, 0.1, prior, true);
  ASSERT_THAT(p, IsOk());
  EXPECT_NEAR((*p)[0], oracle::kExpFirst, 1e-15);
}

TEST(ExponentialMechanismTest, LargeUtilitiesDoNotOverflow) {
  const std::vector<double> u = {1e6, 1e6 - 1, -kInf};
  const std::vector<double> prior = {1.0, 1.0, 1.0};
  auto p = ExponentialProbabilities(u, 1.0, 2.0, prior);
  ASSERT_THAT(p, IsOk());
  EXPECT_NEAR((*p)[0], 1 / (1 + std::exp(-1.0)), 1e-12);
  EXPECT_EQ((*p)[2], 0.0);
}

TEST(ExponentialMechanismTest, NoMassIsFailedPrecondition) {
  const std::vector<double> u = {-kInf, -kInf};
  const std::vector<double> prior = {1.0, 1.0};
  EXPECT_THAT(ExponentialProbabilities(u, 1.0, 1.0, prior),
              StatusIs(absl::StatusCode::kFailedPrecondition));
}

TEST(ExponentialMechanismTest, PriorTilts) {
  const std::vector<double> u = {0.0, 0.0};
  const std::vector<double> prior = {3.0, 1.0};
  auto p = ExponentialProbabilities(u, 1.0, 1.0, prior);
  EXPECT_THAT(p, IsOkAndHolds(ElementsAre(DoubleEq(0.75), DoubleEq(0.25))));
}

TEST(ExponentialMechanismTest, SampledFrequencies) {
  auto grid = CandidateGrid::FromPoints({{0}, {1}, {2}});
  const std::vector<double> u = {0.2, 0.5, 0.1};
  SeededRandom rng(4);
  std::vector<double> counts(3, 0);
  for (int t = 0; t < 100000; ++t) {
    auto o = ExponentialMechanismDiscrete(*grid, u, Bound(0.1), 1.0,
                                          Prior::Uniform(), false, rng);
    ASSERT_TRUE(o.ok());
    counts[o->audit.selected_index] += 1;
    EXPECT_EQ((*o->payload)[0], static_cast<double>(o->audit.selected_index));
  }
  const std::vector<double> prior(3, 1.0);
  auto p = *ExponentialProbabilities(u, 0.1, 1.0, prior);
  for (size_t i = 0; i < 3; ++i) EXPECT_NEAR(counts[i] / 100000, p[i], 0.005);
}

TEST(SampleCategoricalTest, UsesOneUniformDraw) {
  SeededRandom rng(2);
  const std::vector<double> p = {0.2, 0.3, 0.5};
  SampleCategorical(p, rng);
  EXPECT_EQ(rng.position(), 1u);
}

TEST(PtrTest, Constants) {
  auto lap = PtrConstantsFor(NoiseVariant::kLaplace, 0.1);
  ASSERT_THAT(lap, IsOk());
  EXPECT_DOUBLE_EQ(lap->a, 1.0);
  EXPECT_DOUBLE_EQ(1.0 + lap->b / 1.0, oracle::kPtrThreshold);
  auto gauss = PtrConstantsFor(NoiseVariant::kGaussian, 1e-4);
  ASSERT_THAT(gauss, IsOk());
  EXPECT_DOUBLE_EQ(gauss->b, 2 * std::log(1.25 / 1e-4));
  EXPECT_DOUBLE_EQ(gauss->a, std::sqrt(2 * std::log(1.25 / 1e-4)));
  EXPECT_THAT(PtrConstantsFor(NoiseVariant::kLaplace, 0.0),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(PtrTest, ThresholdDecidesRelease) {
  const PrivacyParams params{1.0, 0.1, NoiseVariant::kLaplace};
  ConstantNoise noise(0.0);
  double seen_k = -1;
  auto pass = Ptr([&](double k) { seen_k = k; return 5.0; }, 0.4, 0.1, params,
                  noise);
  ASSERT_THAT(pass, IsOk());
  EXPECT_FALSE(pass->bottom());
  EXPECT_NEAR(seen_k, oracle::kPtrThreshold, 1e-12);
  EXPECT_NEAR(pass->audit.threshold, oracle::kPtrThreshold, 1e-12);
  EXPECT_DOUBLE_EQ((*pass->payload)[0], 0.4);
  EXPECT_DOUBLE_EQ(pass->audit.noise_scale, 0.1);

  auto fail = Ptr([](double) { return 3.0; }, 0.4, 0.1, params, noise);
  ASSERT_THAT(fail, IsOk());
  EXPECT_TRUE(fail->bottom());
  EXPECT_FALSE(fail->audit.releasable);
}

TEST(PtrTest, BottomConsumesOnlyTheTestDraw) {
  const PrivacyParams params{1.0, 0.1, NoiseVariant::kLaplace};
  SeededRandom rng(1);
  auto o = Ptr([](double) { return 1.0; }, 0.0, 0.1, params, rng);
  ASSERT_THAT(o, IsOk());
  if (o->bottom()) EXPECT_EQ(rng.position(), 1u);
}

TEST(PtrExponentialTest, TwoPointExample) {
  const double eps = 1.0, eta = 0.05;
  const PrivacyParams params{eps, 0.1, NoiseVariant::kLaplace};
  auto grid = CandidateGrid::FromPoints({{0}, {1}});
  const double c1 = eta * 2 * std::log(3.0) / eps;
  ConstantNoise noise(100.0, 0.0, 7);  // large V1 forces the release path
  int first = 0;
  constexpr int kDraws = 100000;
  for (int t = 0; t < kDraws; ++t) {
    auto o = PtrExponential(
        [](double) { return 0.0; },
        [&](std::span<const double> v) { return v[0] == 0 ? 0.0 : c1; },
        *grid, eta, params, noise);
    ASSERT_TRUE(o.ok());
    ASSERT_FALSE(o->bottom());
    first += o->audit.selected_index == 0;
  }
  EXPECT_NEAR(static_cast<double>(first) / kDraws, 0.75, 0.005);
}

TEST(PtrExponentialTest, CostNotEvaluatedOnBottom) {
  const PrivacyParams params{1.0, 0.1, NoiseVariant::kLaplace};
  auto grid = CandidateGrid::FromPoints({{0}, {1}});
  ConstantNoise noise(-100.0);
  bool called = false;
  auto o = PtrExponential([](double) { return 0.0; },
                          [&](std::span<const double>) {
                            called = true;
                            return 0.0;
                          },
                          *grid, 0.1, params, noise);
  ASSERT_THAT(o, IsOk());
  EXPECT_TRUE(o->bottom());
  EXPECT_FALSE(called);
}

TEST(PtrExponentialTest, AllInfiniteCostIsFailedPrecondition) {
  const PrivacyParams params{1.0, 0.1, NoiseVariant::kLaplace};
  auto grid = CandidateGrid::FromPoints({{0}, {1}});
  ConstantNoise noise(100.0);
  EXPECT_THAT(PtrExponential([](double) { return 0.0; },
                             [](std::span<const double>) { return kInf; },
                             *grid, 0.1, params, noise),
              StatusIs(absl::StatusCode::kFailedPrecondition));
}

TEST(SpendTest, Bookkeeping) {
  EXPECT_DOUBLE_EQ(LaplaceSpend(0.5).epsilon, 0.5);
  EXPECT_DOUBLE_EQ(LaplaceSpend(0.5).delta, 0.0);
  EXPECT_DOUBLE_EQ(GaussianSpend(0.5, 1e-5).delta, 1e-5);
  const PrivacyParams lap{1.0, 1e-4, NoiseVariant::kLaplace};
  const PrivacyParams gau{1.0, 1e-4, NoiseVariant::kGaussian};
  EXPECT_DOUBLE_EQ(PtrSpend(lap).epsilon, 2.0);
  EXPECT_DOUBLE_EQ(PtrSpend(lap).delta, 1e-4);
  EXPECT_DOUBLE_EQ(PtrSpend(gau).delta, 2 * std::exp(1.0) * 1e-4 + 1e-8);
  EXPECT_DOUBLE_EQ(PtrExponentialSpend(gau).epsilon, 2.0);
  EXPECT_DOUBLE_EQ(PtrExponentialSpend(gau).delta, 2e-4);
  EXPECT_DOUBLE_EQ(PtrExponentialSpend(lap).delta, 1e-4);
}

}  // namespace
}  // namespace depthguard

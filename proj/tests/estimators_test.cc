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
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "depthguard/dataset.h"
#include "depthguard/depth.h"
#include "depthguard/estimators.h"
#include "depthguard/experiments.h"
#include "depthguard/ledger.h"
#include "depthguard/mechanisms.h"
#include "depthguard/random.h"
#include "testing/status_matchers.h"

namespace depthguard {
namespace {

namespace oracle {
#include "oracles/derived_values.inc"
}  // namespace oracle

using ::depthguard::testing::IsOk;
using ::depthguard::testing::StatusIs;
using ::testing::DoubleEq;
using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::IsEmpty;
using ::testing::Not;

Dataset Line(std::vector<double> v) {
  return *Dataset::FromFlat(std::move(v), 1);
}

const DirectionSet& Dirs1() {
  static const DirectionSet* d = new DirectionSet(*SampleDirections(2, 1, 0));
  return *d;
}

TEST(PrivateDepthPointTest, ZeroNoiseReturnsDepthAndRecords) {
  BudgetLedger ledger;
  ConstantNoise zero;
  const PrivacyParams params{0.5, 0.0, NoiseVariant::kLaplace};
  auto r = PrivateDepthPoint(std::vector<double>{2}, Line({1, 2, 3}),
                             DepthKind::kHalfspace, Dirs1(), params, zero,
                             {.ledger = &ledger});
  ASSERT_THAT(r, IsOk());
  EXPECT_EQ(r->estimator, "depth-point");
  EXPECT_THAT(*r->raw, ElementsAre(DoubleEq(oracle::kHalfspace123At2)));
  EXPECT_DOUBLE_EQ(r->audit.noise_scale, (1.0 / 3.0) / 0.5);
  EXPECT_DOUBLE_EQ(r->spend.epsilon, 0.5);
  EXPECT_DOUBLE_EQ(r->spend.delta, 0.0);
  ASSERT_EQ(ledger.size(), 1u);
  EXPECT_EQ(ledger.entries()[0].mechanism, "depth-point");
  EXPECT_EQ(ledger.entries()[0].variant, "laplace");
}

TEST(PrivateDepthPointTest, AuditScaleForHundredPoints) {
  std::vector<double> v(100);
  for (size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  ConstantNoise zero;
  auto r = PrivateDepthPoint(std::vector<double>{50}, Line(v),
                             DepthKind::kHalfspace, Dirs1(),
                             {0.5, 0.0, NoiseVariant::kLaplace}, zero);
  ASSERT_THAT(r, IsOk());
  EXPECT_DOUBLE_EQ(r->audit.noise_scale, 0.02);
}

TEST(PrivateDepthPointTest, ClampsPostProcessedValue) {
  ConstantNoise big(10.0);
  auto r = PrivateDepthPoint(std::vector<double>{2}, Line({1, 2, 3}),
                             DepthKind::kIrw, Dirs1(),
                             {1.0, 0.0, NoiseVariant::kLaplace}, big);
  ASSERT_THAT(r, IsOk());
  EXPECT_GT((*r->raw)[0], 1.0);
  EXPECT_THAT(*r->post_processed, ElementsAre(1.0));
}

TEST(PrivateDepthPointTest, GaussianSpend) {
  ConstantNoise zero;
  auto r = PrivateDepthPoint(std::vector<double>{2}, Line({1, 2, 3}),
                             DepthKind::kHalfspace, Dirs1(),
                             {1.0, 1e-5, NoiseVariant::kGaussian}, zero);
  ASSERT_THAT(r, IsOk());
  EXPECT_DOUBLE_EQ(r->spend.delta, 1e-5);
  EXPECT_EQ(r->ledger_entry.variant, "gaussian");
}

TEST(PrivateDepthPointTest, RejectsProjectionKind) {
  ConstantNoise zero;
  EXPECT_THAT(PrivateDepthPoint(std::vector<double>{2}, Line({1, 2, 3}),
                                DepthKind::kProjectionIqr, Dirs1(),
                                {1.0, 0.0, NoiseVariant::kLaplace}, zero),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       HasSubstr("PrivateProjectionDepth")));
}

TEST(PrivateDepthPointTest, ConsistentForLargeN) {
  // The noise scale 1/(n eps) vanishes with n.
  const Dataset data = GaussianSample(5000, 2, 3);
  auto dirs = SampleDirections(100, 2, 1);
  SeededRandom rng(8);
  auto r = PrivateDepthPoint(std::vector<double>{0, 0}, data,
                             DepthKind::kHalfspace, *dirs,
                             {1.0, 0.0, NoiseVariant::kLaplace}, rng);
  ASSERT_THAT(r, IsOk());
  EXPECT_NEAR((*r->raw)[0], 0.5, 0.05);
}

TEST(PrivateDepthVectorTest, ScaleAndNotes) {
  ConstantNoise zero;
  auto r = PrivateDepthVector(Line({1, 2, 3, 4, 5}), DepthKind::kHalfspace,
                              Dirs1(), {1.0, 0.0, NoiseVariant::kLaplace},
                              zero);
  ASSERT_THAT(r, IsOk());
  EXPECT_DOUBLE_EQ(r->audit.noise_scale, 0.8);
  EXPECT_EQ(r->raw->size(), 5u);
  EXPECT_THAT(r->notes, Not(IsEmpty()));

  auto robust = PrivateDepthVector(
      Line({1, 2, 3, 4, 5}), DepthKind::kHalfspace, Dirs1(),
      {1.0, 0.0, NoiseVariant::kLaplace}, zero,
      {.vector_bound = VectorBound::kTieRobust});
  ASSERT_THAT(robust, IsOk());
  EXPECT_DOUBLE_EQ(robust->audit.noise_scale, 1.6);
}

TEST(PrivateDepthVectorTest, RejectsProjectionKind) {
  ConstantNoise zero;
  EXPECT_THAT(PrivateDepthVector(Line({1, 2, 3}), DepthKind::kProjectionMad,
                                 Dirs1(), {1.0, 0.0, NoiseVariant::kLaplace},
                                 zero),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(DefaultEtaTest, Formula) {
  EXPECT_DOUBLE_EQ(DefaultEta(2000), std::log(2000.0) / std::pow(2000.0, 0.65));
}

TEST(ProjectionBreakdownBoundTest, Cases) {
  auto table = ProjectionTable::Build(Line({0, 1, 2, 3, 4}), Dirs1());
  ASSERT_THAT(table, IsOk());
  const std::vector<double> x = {10};
  EXPECT_EQ(ProjectionBreakdownBound(*table, x, 6.0, 1.0, ScaleKind::kIqr), 2);
  EXPECT_EQ(ProjectionBreakdownBound(*table, x, 5.0, 1.0, ScaleKind::kIqr), 1);
  EXPECT_EQ(ProjectionBreakdownBound(*table, x, 6.0, 0.5, ScaleKind::kIqr), 1);
  EXPECT_EQ(ProjectionBreakdownBound(*table, x, 6.0, 2.5, ScaleKind::kIqr), 1);
}

TEST(PrivateProjectionDepthTest, InsensitiveInstanceReleases) {
  // With V1 = b the test statistic k* is exactly 1 and the certificate at
  // the median holds with margin 1 < eta.
  const double delta = 0.1;
  const double b = std::log(2 / delta);
  ConstantNoise noise(b);
  BudgetLedger ledger;
  auto r = PrivateProjectionDepth(
      std::vector<double>{2}, Line({0, 1, 2, 3, 4}), ScaleKind::kIqr, Dirs1(),
      6.0, {1.0, delta, NoiseVariant::kLaplace}, noise, {.ledger = &ledger});
  ASSERT_THAT(r, IsOk());
  EXPECT_TRUE(r->audit.test_passed);
  EXPECT_DOUBLE_EQ(r->audit.k_star, 1.0);
  ASSERT_FALSE(r->bottom());
  EXPECT_DOUBLE_EQ((*r->raw)[0], 6.0 * b);
  EXPECT_DOUBLE_EQ((*r->post_processed)[0], 1.0 / (1.0 + 6.0 * b));
  EXPECT_DOUBLE_EQ(r->spend.epsilon, 2.0);
  EXPECT_DOUBLE_EQ(r->spend.delta, delta);
  EXPECT_EQ(ledger.size(), 1u);
}

TEST(PrivateProjectionDepthTest, BottomStillSpendsBudget) {
  ConstantNoise noise(-50.0);
  BudgetLedger ledger;
  auto r = PrivateProjectionDepth(
      std::vector<double>{2}, Line({0, 1, 2, 3, 4}), ScaleKind::kMad, Dirs1(),
      0.1, {1.0, 0.1, NoiseVariant::kLaplace}, noise, {.ledger = &ledger});
  ASSERT_THAT(r, IsOk());
  EXPECT_TRUE(r->bottom());
  EXPECT_FALSE(r->post_processed.has_value());
  ASSERT_EQ(ledger.size(), 1u);
  EXPECT_DOUBLE_EQ(ledger.entries()[0].epsilon, 2.0);
}

TEST(PrivateProjectionDepthTest, GaussianBookkeeping) {
  ConstantNoise noise(0.0, -50.0);
  auto r = PrivateProjectionDepth(
      std::vector<double>{2}, Line({0, 1, 2, 3, 4}), ScaleKind::kMad, Dirs1(),
      0.1, {1.0, 1e-3, NoiseVariant::kGaussian}, noise);
  ASSERT_THAT(r, IsOk());
  EXPECT_DOUBLE_EQ(r->spend.delta, 2 * std::exp(1.0) * 1e-3 + 1e-6);
}

TEST(PrivateProjectionDepthTest, RequiresDelta) {
  ConstantNoise noise;
  EXPECT_THAT(PrivateProjectionDepth(std::vector<double>{2},
                                     Line({0, 1, 2, 3, 4}), ScaleKind::kMad,
                                     Dirs1(), 0.1,
                                     {1.0, 0.0, NoiseVariant::kLaplace}, noise),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(MedianExpTest, SymmetricProbabilities) {
  auto grid = CandidateGrid::Regular({-2}, {2}, {5});
  auto p = MedianExpProbabilities(Line({-2, -1, 0, 1, 2}),
                                  DepthKind::kHalfspace, *grid,
                                  Prior::Uniform(), Dirs1(), 1.0);
  ASSERT_THAT(p, IsOk());
  EXPECT_THAT(*p, ElementsAre(DoubleNear(oracle::kMedianExp_0, 1e-15),
                              DoubleNear(oracle::kMedianExp_1, 1e-15),
                              DoubleNear(oracle::kMedianExp_2, 1e-15),
                              DoubleNear(oracle::kMedianExp_3, 1e-15),
                              DoubleNear(oracle::kMedianExp_4, 1e-15)));
  EXPECT_EQ((*p)[0], (*p)[4]);
  EXPECT_EQ((*p)[1], (*p)[3]);
}

TEST(MedianExpTest, ReportAndLedger) {
  auto grid = CandidateGrid::Regular({-2}, {2}, {5});
  SeededRandom rng(3);
  BudgetLedger ledger;
  auto r = PrivateDepthMedianExp(Line({-2, -1, 0, 1, 2}),
                                 DepthKind::kHalfspace, *grid,
                                 Prior::Uniform(), Dirs1(), 1.0, rng,
                                 {.ledger = &ledger});
  ASSERT_THAT(r, IsOk());
  ASSERT_FALSE(r->bottom());
  EXPECT_EQ(r->raw->size(), 1u);
  EXPECT_TRUE(r->grid_spec.has_value());
  EXPECT_DOUBLE_EQ(r->spend.epsilon, 1.0);
  EXPECT_DOUBLE_EQ(r->spend.delta, 0.0);
  ASSERT_EQ(ledger.size(), 1u);
  EXPECT_EQ(ledger.entries()[0].variant, "exponential");
}

TEST(ProjectionMedianTest, GridOutsideBallIsRejected) {
  auto spec = TruncatedOutlyingnessSpec::Create(
      0.5, ScaleKind::kIqr, *SampleDirections(10, 2, 1));
  ASSERT_THAT(spec, IsOk());
  auto grid = CandidateGrid::Regular({3, 3}, {4, 4}, {2, 2});
  SeededRandom rng(1);
  EXPECT_THAT(
      PrivateProjectionMedianPtr(GaussianSample(50, 2, 1), *spec, *grid, 0.5,
                                 {1.0, 1e-4, NoiseVariant::kLaplace}, rng),
      StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("outside")));
  EXPECT_THAT(TruncatedOutlyingnessSpec::Create(0.0, ScaleKind::kIqr,
                                                *SampleDirections(10, 2, 1)),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ProjectionMedianTest, ReleasePicksInsideGridPoint) {
  auto spec = TruncatedOutlyingnessSpec::Create(
      1.0, ScaleKind::kIqr, *SampleDirections(50, 2, 1));
  auto grid = CandidateGrid::Regular({-2, -2}, {2, 2}, {5, 5});
  ConstantNoise noise(100.0, 0.0, 4);  // forces the release path
  BudgetLedger ledger;
  auto r = PrivateProjectionMedianPtr(GaussianSample(400, 2, 2), *spec, *grid,
                                      0.05, {1.0, 1e-4, NoiseVariant::kLaplace},
                                      noise, {.ledger = &ledger});
  ASSERT_THAT(r, IsOk());
  ASSERT_FALSE(r->bottom());
  EXPECT_TRUE(spec->Inside(*r->raw));
  EXPECT_DOUBLE_EQ(r->spend.epsilon, 2.0);
  EXPECT_DOUBLE_EQ(r->spend.delta, 1e-4);
  EXPECT_EQ(ledger.size(), 1u);
}

TEST(ProjectionMedianTest, GaussianSpendIsTwoDelta) {
  auto spec = TruncatedOutlyingnessSpec::Create(
      1.0, ScaleKind::kMad, *SampleDirections(20, 2, 1));
  auto grid = CandidateGrid::Regular({-1, -1}, {1, 1}, {3, 3});
  ConstantNoise noise(0.0, -100.0);
  auto r = PrivateProjectionMedianPtr(
      GaussianSample(100, 2, 2), *spec, *grid, 0.05,
      {1.0, 1e-4, NoiseVariant::kGaussian}, noise);
  ASSERT_THAT(r, IsOk());
  EXPECT_TRUE(r->bottom());
  EXPECT_DOUBLE_EQ(r->spend.delta, 2e-4);
}

}  // namespace
}  // namespace depthguard

// Copyright 2026 The Cognitive Neurosecurity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "cns/errors.h"
#include "cns/measurement_statistics.h"

namespace cns {
namespace {

TEST(BinomialTest, LogPmf) {
  EXPECT_NEAR(LogBinomialPmf(3, 10, 0.3), -1.3211512777668881, 1e-13);
  EXPECT_EQ(LogBinomialPmf(11, 10, 0.3), -INFINITY);
  EXPECT_EQ(LogBinomialPmf(0, 10, 0.0), 0.0);
}

// References from 50-digit mpmath sums.
TEST(BinomialTest, TailsMatchReference) {
  EXPECT_NEAR(BinomialUpperTail(600, 1000, 0.5).Value() / 1.3642320780330092e-10, 1.0, 1e-11);
  EXPECT_NEAR(BinomialUpperTail(900, 1000, 0.5).log_value, -371.1164211849318, 1e-9);
  EXPECT_NEAR(BinomialLowerTail(200, 1000, 0.25).Value() / 0.00010898019880887953, 1.0, 1e-12);
  EXPECT_EQ(BinomialUpperTail(0, 1000, 0.5).Value(), 1.0);
}

TEST(NoisyModelTest, RateAndMoments) {
  NoisyMeasurementModel m(100, 0.3, 0.1);
  EXPECT_NEAR(m.Rate(), 0.34, 1e-15);
  Moments mo = EffectiveFlipMoments(m);
  EXPECT_NEAR(mo.mean, 34.0, 1e-12);
  EXPECT_NEAR(mo.variance, 100 * 0.34 * 0.66, 1e-12);
  EXPECT_NEAR(MixturePmf(1, 0.3, 0.1), 0.34, 1e-15);
  EXPECT_NEAR(MixturePmf(0, 0.3, 0.1) + MixturePmf(1, 0.3, 0.1), 1.0, 1e-15);
  EXPECT_THROW(NoisyMeasurementModel(10, 1.5, 0.1), ValidationError);
  EXPECT_THROW(MixturePmf(2, 0.3, 0.1), ValidationError);
}

TEST(NoisyModelTest, ConvolutionEqualsEffectiveBinomial) {
  NoisyMeasurementModel m(60, 0.3, 0.15);
  std::vector<double> pmf = ConvolvedCountPmf(m);
  ASSERT_EQ(pmf.size(), 61u);
  EXPECT_NEAR(std::accumulate(pmf.begin(), pmf.end(), 0.0), 1.0, 1e-13);
  for (std::size_t k = 0; k <= 60; ++k) {
    EXPECT_NEAR(pmf[k], std::exp(LogBinomialPmf(k, 60, m.Rate())), 1e-14);
  }
}

TEST(NoisyModelTest, PrintedCompoundMassIsNotNormalized) {
  // f0^n + n (f0^n + f1^n), with f the mixture pmf.
  EXPECT_NEAR(PrintedCompoundMass(NoisyMeasurementModel(20, 0.3, 0.1)),
              0.0051653377245635184, 1e-15);
}

TEST(GaussianTest, TailShapes) {
  EXPECT_DOUBLE_EQ(GaussianUpperTail(5.0, 5.0, 2.0), 0.5);
  NoisyMeasurementModel m(1000, 0.5, 0.0);
  EXPECT_DOUBLE_EQ(SimilarityTail(500.0, m), 0.5);
  // The printed prefactor does not give 1/2 in the far left tail.
  EXPECT_NEAR(SimilarityTail(0.0, m), 1.0, 1e-12);
  EXPECT_NEAR(PrintedSimilarityTail(0.0, m), 0.5 + 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(TrueVsNoisyTail(750.0, 1000, 0.25), 0.5, 1e-15);
}

TEST(GaussianTest, MaxErrorMatchesScipy) {
  EXPECT_NEAR(MaxGaussianTailError(1000, 0.5, true), 2.716595658680543e-05, 1e-9);
  EXPECT_NEAR(MaxGaussianTailError(1000, 0.5, false), 0.012612509089180102, 1e-9);
  EXPECT_NEAR(MaxGaussianTailError(1000, 0.25, true), 0.0024265159001588543, 1e-9);
}

TEST(GaussianTest, ExactTrueVsNoisyTail) {
  // Pr[Bin(1000, 0.75) >= 800] = Pr[Bin(1000, 0.25) <= 200].
  EXPECT_NEAR(ExactTrueVsNoisyTail(800, 1000, 0.25).Value() / 0.00010898019880887953, 1.0,
              1e-12);
}

struct IntervalCase {
  double rate;
  double mass;
  std::size_t lo;
  std::size_t hi;
  double outside;
};

class IntervalTest : public ::testing::TestWithParam<IntervalCase> {};

// Frozen from an independent scan with 50-digit mpmath sums.
TEST_P(IntervalTest, TightestSymmetric) {
  const IntervalCase& c = GetParam();
  ConcentrationInterval iv = TightestSymmetricInterval(1000, c.rate, c.mass);
  EXPECT_EQ(iv.lo_count, c.lo);
  EXPECT_EQ(iv.hi_count, c.hi);
  EXPECT_NEAR(iv.outside.Value() / c.outside, 1.0, 1e-9);
  EXPECT_LE(iv.outside.Value(), 1 - c.mass);
}

INSTANTIATE_TEST_SUITE_P(
    N1000, IntervalTest,
    ::testing::Values(IntervalCase{0.5, 1 - 1e-6, 423, 577, 9.060485571324681e-07},
                      IntervalCase{0.5, 1 - 2e-6, 425, 575, 1.720233089230311e-06},
                      IntervalCase{0.25, 1 - 1e-6, 183, 317, 9.450804038279778e-07},
                      IntervalCase{0.25, 1 - 2e-6, 185, 315, 1.923760522038795e-06},
                      IntervalCase{1.0 / 3, 1 - 1e-6, 261, 406, 9.759662929977262e-07},
                      IntervalCase{1.0 / 3, 1 - 2e-6, 263, 404, 1.9056860139746846e-06}));

TEST(ConcentrationTableTest, RandomPairIgnoresQ) {
  auto rows = ConcentrationTable({1000}, {{PairLaw::kRandomPair, 0.25}, {PairLaw::kTrueVsNoisy, 0.25}},
                                 {1 - 2e-6});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rows[0].lo, 0.425);
  EXPECT_DOUBLE_EQ(rows[1].lo, 0.185);
  EXPECT_EQ(rows[1].law, PairLaw::kTrueVsNoisy);
}

TEST(ConcentrationTableTest, RejectsBadMass) {
  EXPECT_THROW(TightestSymmetricInterval(100, 0.5, 1.0), ValidationError);
  EXPECT_THROW(TightestSymmetricInterval(0, 0.5, 0.9), ValidationError);
}

}  // namespace
}  // namespace cns

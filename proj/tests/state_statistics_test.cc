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
#include <vector>

#include <gtest/gtest.h>

#include "cns/errors.h"
#include "cns/parallel.h"
#include "cns/state_statistics.h"

namespace cns {
namespace {

CMatrix Rho() {
  CMatrix m(2, 2);
  m << 0.7, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.3;
  return m;
}

CMatrix Sigma() {
  CMatrix m(2, 2);
  m << 0.4, Complex(0, -0.1), Complex(0, 0.1), 0.6;
  return m;
}

TEST(FidelityTest, MixedMatchesReference) {
  // scipy.linalg.sqrtm reference.
  DensityMatrix rho(Rho()), sigma(Sigma());
  EXPECT_NEAR(FidelityMixed(rho, sigma), 0.8236665218650167, 1e-12);
  EXPECT_NEAR(FidelityMixed(rho, sigma, SqrtMethod::kSeries), 0.8236665218650167, 1e-10);
  EXPECT_NEAR(FidelityMixed(sigma, rho), FidelityMixed(rho, sigma), 1e-12);
}

TEST(FidelityTest, CommutingStatesReduceToBhattacharyya) {
  std::vector<double> p = {0.1, 0.6, 0.3}, q = {0.5, 0.25, 0.25};
  double bc = 0;
  for (int i = 0; i < 3; ++i) bc += std::sqrt(p[i] * q[i]);
  EXPECT_NEAR(FidelityMixed(DensityMatrix::FromDiagonal(p), DensityMatrix::FromDiagonal(q)),
              bc * bc, 1e-13);
}

TEST(FidelityTest, PureStatesAgreeWithOverlap) {
  CounterRng rng = MakeStream(1, "fid-pure");
  DenseState a = SampleRandomPure(6, rng), b = SampleRandomPure(6, rng);
  EXPECT_NEAR(FidelityMixed(DensityMatrix::FromPure(a), DensityMatrix::FromPure(b)),
              FidelityPure(a, b), 1e-12);
  EXPECT_NEAR(FidelityPure(a, a), 1.0, 1e-14);
}

TEST(FidelityTest, RankDeficientInputsAreStable) {
  CounterRng rng = MakeStream(2, "fid-rank");
  DensityMatrix rho = SampleRandomDensity(8, 2, rng);
  EXPECT_NEAR(FidelityMixed(rho, rho), 1.0, 1e-10);
  EXPECT_THROW(MatrixSqrt(rho, SqrtMethod::kSeries), MethodInapplicableError);
}

TEST(FidelityTest, SqrtMethodsAgree) {
  CounterRng rng = MakeStream(3, "sqrt");
  DensityMatrix rho = SampleRandomDensity(5, 5, rng);
  CMatrix e = MatrixSqrt(rho, SqrtMethod::kEigen);
  CMatrix s = MatrixSqrt(rho, SqrtMethod::kSeries);
  EXPECT_LT(MaxAbsEntry(e - s), 1e-9);
  EXPECT_LT(MaxAbsEntry(e * e - rho.matrix()), 1e-12);
}

TEST(BuresTest, EndpointsAndMaximallyMixed) {
  EXPECT_DOUBLE_EQ(BuresFromFidelity(1.0), 0.0);
  EXPECT_DOUBLE_EQ(BuresFromFidelity(0.0), 1.0);
  DensityMatrix a = DensityMatrix::FromDiagonal(std::vector<double>{1.0, 0.0});
  DensityMatrix b = DensityMatrix::FromDiagonal(std::vector<double>{0.0, 1.0});
  EXPECT_NEAR(BuresNormalized(a, b), 1.0, 1e-12);
  EXPECT_NEAR(BuresNormalized(a, DensityMatrix::MaximallyMixed(2)),
              std::sqrt(1 - std::sqrt(0.5)), 1e-12);
}

TEST(CdfTest, ClosedForms) {
  EXPECT_NEAR(FidelityCdf(0.1, 16, CdfVariant::kCorrected), 0.794108867905351, 1e-14);
  EXPECT_NEAR(FidelityCdf(0.1, 16, CdfVariant::kPrinted), 0.013726075472976605, 1e-15);
  DistanceCdfModel corrected(CdfVariant::kCorrected, 100);
  EXPECT_NEAR(BuresCdf(0.95, corrected), 0.38843844751436216, 1e-13);
  EXPECT_NEAR(MeanBuresApprox(100), 0.9486832980505138, 1e-15);
}

TEST(CdfTest, LogSpaceTails) {
  // mpmath references.
  EXPECT_NEAR(PrintedBuresTail(0.95, 100).Value(), 0.0039236206819632541, 1e-15);
  EXPECT_NEAR(PrintedBuresTail(0.95, 500).Value() / 1.7057581728774726e-5, 1.0, 1e-11);
  EXPECT_NEAR(PrintedBuresTail(0.5, 100).Log10(), std::log10(2.8919613460185584e-38), 1e-10);
  EXPECT_NEAR(PrintedBuresTail(0.5, 500).Log10(), std::log10(1.4123751773491493) - 182,
              1e-10);
  EXPECT_NEAR(CorrectedBuresBelow(0.5, 500).Log10(), std::log10(7.0477521349722551) - 180,
              1e-10);
}

TEST(HaarTest, FidelityFollowsBetaLaw) {
  const std::size_t d = 16;
  std::vector<double> f = SamplePairFidelities(d, 50000, 77);
  McEstimate mean = MeanEstimate(f, 77);
  EXPECT_EQ(mean.samples, 50000u);
  EXPECT_NEAR(mean.value, 1.0 / d, 4 * mean.standard_error);
  double sup = CdfSupDeviation(f, [&](double y) {
    return FidelityCdf(y, d, CdfVariant::kCorrected);
  });
  EXPECT_LT(sup, 0.01);
}

TEST(HaarTest, UnitaryInvariance) {
  CounterRng rng = MakeStream(3, "u");
  CMatrix u = RandomUnitaryMatrix(8, rng);
  std::vector<double> plain = SamplePairFidelities(8, 5000, 9);
  std::vector<double> rotated = SamplePairFidelities(8, 5000, 9, &u);
  for (std::size_t i = 0; i < plain.size(); ++i) ASSERT_NEAR(plain[i], rotated[i], 1e-12);
}

TEST(HaarTest, ThreadCountInvariance) {
  SetThreadCount(1);
  std::vector<double> a = SamplePairFidelities(4, 5000, 5);
  SetThreadCount(4);
  std::vector<double> b = SamplePairFidelities(4, 5000, 5);
  SetThreadCount(1);
  EXPECT_EQ(a, b);
}

TEST(HaarTest, FractionBelowAndSupDeviation) {
  std::vector<double> v = {0.1, 0.2, 0.3, 0.4};
  McEstimate e = FractionBelow(v, 0.3, 0);
  EXPECT_DOUBLE_EQ(e.value, 0.5);
  EXPECT_NEAR(e.standard_error, std::sqrt(0.25 / 4), 1e-15);
  // Uniform cdf against points at 0.1..0.4: worst gap is 1 - 0.4 at the last jump.
  EXPECT_NEAR(CdfSupDeviation(v, [](double y) { return y; }), 0.6, 1e-15);
}

}  // namespace
}  // namespace cns

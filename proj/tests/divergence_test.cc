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

#include "cns/divergence.h"
#include "cns/errors.h"
#include "cns/state_statistics.h"

namespace cns {
namespace {

const ProbabilityVector kP({0.2, 0.5, 0.3});
const ProbabilityVector kQ({0.6, 0.1, 0.3});

TEST(ProbabilityVectorTest, Validates) {
  EXPECT_THROW(ProbabilityVector({0.5, 0.6}), ValidationError);
  EXPECT_THROW(ProbabilityVector({1.5, -0.5}), ValidationError);
  EXPECT_NO_THROW(ProbabilityVector({1.0, 0.0}));
}

// scipy.stats.entropy and scipy.spatial.distance.jensenshannon references.
TEST(ClassicalTest, EntropyAndJsd) {
  EXPECT_NEAR(ShannonEntropy(kP), 1.4854752972273346, 1e-14);
  EXPECT_NEAR(JsdClassical(kP, kQ), 0.4248317593140143, 1e-14);
  EXPECT_NEAR(JsdClassical(kP, kQ, LogBase::kE), 0.35369564018311983, 1e-14);
  EXPECT_NEAR(JsdClassical(ProbabilityVector({1, 0}), ProbabilityVector({0, 1})), 1.0, 1e-15);
  EXPECT_NEAR(JsdClassical(kP, kP), 0.0, 1e-8);
}

TEST(QuantumTest, VonNeumann) {
  EXPECT_NEAR(VonNeumannEntropy(DensityMatrix::MaximallyMixed(8).matrix()), 3.0, 1e-13);
  CMatrix rho(2, 2);
  rho << 0.7, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.3;
  EXPECT_NEAR(VonNeumannEntropy(rho), 0.7219280948873623, 1e-13);
}

TEST(QuantumTest, QjsdMatchesReference) {
  CMatrix rho(2, 2), sigma(2, 2);
  rho << 0.7, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.3;
  sigma << 0.4, Complex(0, -0.1), Complex(0, 0.1), 0.6;
  EXPECT_NEAR(Qjsd(DensityMatrix(rho), DensityMatrix(sigma)), 0.3631987383348109, 1e-12);
}

TEST(QuantumTest, DiagonalStatesReduceToClassical) {
  DensityMatrix a = DensityMatrix::FromDiagonal(kP.values());
  DensityMatrix b = DensityMatrix::FromDiagonal(kQ.values());
  EXPECT_NEAR(Qjsd(a, b), JsdClassical(kP, kQ), 1e-12);
}

TEST(QuantumTest, PureReductionIsNotExact) {
  PureReductionReport r = QjsdPureReduction(kP, kQ);
  EXPECT_NEAR(r.reduction, 0.4248317593140143, 1e-13);
  EXPECT_NEAR(r.exact, 0.5890234891130367, 1e-12);
}

TEST(QuantumTest, RogaBound) {
  EXPECT_NEAR(RogaBound(0.5), 0.7372682301575163, 1e-14);
  EXPECT_EQ(RogaBound(0.0), 0.0);
  // Equality for pure pairs, inequality for mixed pairs.
  CounterRng rng = MakeStream(12, "roga");
  for (int i = 0; i < 50; ++i) {
    DensityMatrix a = DensityMatrix::FromPure(SampleRandomPure(4, rng));
    DensityMatrix b = DensityMatrix::FromPure(SampleRandomPure(4, rng));
    EXPECT_NEAR(Qjsd(a, b), RogaBound(BuresNormalized(a, b)), 1e-7);
    DensityMatrix c = SampleRandomDensity(4, 3, rng), d = SampleRandomDensity(4, 2, rng);
    EXPECT_LE(Qjsd(c, d), RogaBound(BuresNormalized(c, d)) + 1e-10);
  }
}

TEST(QuantumTest, DimensionMismatchThrows) {
  EXPECT_THROW(Qjsd(DensityMatrix::MaximallyMixed(2), DensityMatrix::MaximallyMixed(3)),
               DimensionError);
  EXPECT_THROW(JsdClassical(ProbabilityVector({1, 0}), kP), DimensionError);
}

}  // namespace
}  // namespace cns

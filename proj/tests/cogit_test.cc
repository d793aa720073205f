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
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "cns/cogit.h"
#include "cns/dense_state.h"
#include "cns/errors.h"

namespace cns {
namespace {

constexpr double kPi = std::numbers::pi;

double MaxError(const CogitHypervector& a, const CogitHypervector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i].alpha() - b[i].alpha()));
    worst = std::max(worst, std::abs(a[i].beta() - b[i].beta()));
  }
  return worst;
}

TEST(CogitTest, NormalizesAndFixesGlobalPhase) {
  Cogit c(Complex(0.0, 3.0), Complex(4.0, 0.0));
  EXPECT_NEAR(c.alpha().real(), 0.6, 1e-15);
  EXPECT_EQ(c.alpha().imag(), 0.0);
  EXPECT_NEAR(std::abs(c.beta()), 0.8, 1e-15);
  EXPECT_NEAR(c.ProbOne(), 0.64, 1e-15);
  EXPECT_THROW(Cogit(0.0, 0.0), DegenerateError);
}

TEST(CogitTest, BlochRoundTrip) {
  Cogit c = Cogit::FromBloch(1.1, -2.3);
  EXPECT_NEAR(c.Theta(), 1.1, 1e-14);
  EXPECT_NEAR(c.Phi(), -2.3, 1e-14);
  EXPECT_NEAR(Fidelity(Cogit::Plus(), Cogit::FromBloch(kPi / 2, 0.0)), 1.0, 1e-15);
  EXPECT_NEAR(Fidelity(Cogit::Zero(), Cogit::One()), 0.0, 1e-15);
}

class AlgebraLawsTest : public ::testing::Test {
 protected:
  CounterRng rng_ = MakeStream(2026, "algebra-test");
  CogitHypervector x_ = CogitHypervector::Random(64, rng_);
  CogitHypervector y_ = CogitHypervector::Random(64, rng_);
  CogitHypervector z_ = CogitHypervector::Random(64, rng_);
};

TEST_F(AlgebraLawsTest, BindIsCommutativeAndAssociative) {
  EXPECT_LT(MaxError(Bind(x_, y_), Bind(y_, x_)), 1e-14);
  EXPECT_LT(MaxError(Bind(Bind(x_, y_), z_), Bind(x_, Bind(y_, z_))), 1e-13);
}

TEST_F(AlgebraLawsTest, IdentityAndInverse) {
  auto id = CogitHypervector::BindIdentity(x_.size());
  EXPECT_LT(MaxError(Bind(x_, id), x_), 1e-15);
  EXPECT_LT(MaxError(Bind(x_, Inverse(x_)), id), 1e-14);
  EXPECT_LT(MaxError(Unbind(Bind(x_, y_), y_), x_), 1e-13);
}

TEST_F(AlgebraLawsTest, EquatorPhasesAdd) {
  std::vector<double> a = {0.1, 1.0, -2.0}, b = {0.4, 2.5, -1.5};
  auto s = Bind(CogitHypervector::FromPhases(a), CogitHypervector::FromPhases(b));
  for (std::size_t i = 0; i < a.size(); ++i) {
    double expected = std::remainder(a[i] + b[i], 2 * kPi);
    EXPECT_NEAR(s[i].Phi(), expected, 1e-14);
    EXPECT_NEAR(s[i].ProbOne(), 0.5, 1e-15);
  }
}

TEST_F(AlgebraLawsTest, PermuteIsCyclic) {
  auto p = Permute(x_, 5);
  for (std::size_t i = 0; i < x_.size(); ++i) EXPECT_EQ(p[(i + 5) % x_.size()], x_[i]);
  EXPECT_EQ(Permute(p, -5), x_);
  EXPECT_EQ(Permute(x_, static_cast<long long>(x_.size())), x_);
  // Permutation distributes over binding.
  EXPECT_LT(MaxError(Permute(Bind(x_, y_), 3), Bind(Permute(x_, 3), Permute(y_, 3))), 1e-15);
}

TEST_F(AlgebraLawsTest, BundleOfCopiesIsTheInput) {
  std::vector<CogitHypervector> three = {x_, x_, x_};
  EXPECT_LT(MaxError(Bundle(three), x_), 1e-14);
}

TEST_F(AlgebraLawsTest, BundleStaysSimilarToMembers) {
  std::vector<CogitHypervector> items = {x_, y_, z_};
  auto b = Bundle(items);
  auto w = CogitHypervector::Random(64, rng_);
  EXPECT_GT(ExpectedProjectiveSimilarity(b, x_), ExpectedProjectiveSimilarity(b, w));
}

TEST(AlgebraTest, DegenerateBindResolvesOrThrows) {
  auto zeros = CogitHypervector::Filled(3, Cogit::Zero());
  auto ones = CogitHypervector::Filled(3, Cogit::One());
  AlgebraResult r = BindWithReport(zeros, ones);
  EXPECT_EQ(r.degenerate.size(), 3u);
  EXPECT_EQ(r.value, zeros);
  EXPECT_THROW(Bind(zeros, ones, DegeneratePolicy::kThrow), DegenerateError);
}

TEST(AlgebraTest, LengthMismatchThrows) {
  auto a = CogitHypervector::Filled(3, Cogit::Plus());
  auto b = CogitHypervector::Filled(4, Cogit::Plus());
  EXPECT_THROW(Bind(a, b), DimensionError);
  std::vector<CogitHypervector> v = {a, b};
  EXPECT_THROW(Bundle(v), DimensionError);
  EXPECT_THROW(CogitHypervector(std::vector<Cogit>{}), DimensionError);
}

TEST(SimilarityTest, ExpectedHammingOfKnownStates) {
  auto zeros = CogitHypervector::Filled(10, Cogit::Zero());
  auto plus = CogitHypervector::Filled(10, Cogit::Plus());
  EXPECT_DOUBLE_EQ(ExpectedHammingSimilarity(zeros, zeros), 1.0);
  EXPECT_NEAR(ExpectedHammingSimilarity(zeros, plus), 0.5, 1e-15);
  EXPECT_NEAR(ExpectedProjectiveSimilarity(zeros, plus), 0.5, 1e-15);
}

TEST(SimilarityTest, SampledSimilarityMatchesExpectation) {
  CounterRng rng = MakeStream(8, "sim");
  auto x = CogitHypervector::Random(20000, rng);
  auto y = CogitHypervector::Random(20000, rng);
  EXPECT_NEAR(ProjectiveSimilarity(x, y, rng), ExpectedProjectiveSimilarity(x, y), 0.015);
  EXPECT_NEAR(HammingSimilarity(Measure(x, rng), Measure(y, rng)),
              ExpectedHammingSimilarity(x, y), 0.015);
}

TEST(SimilarityTest, BornRuleIsSquared) {
  CounterRng rng = MakeStream(9, "born");
  auto x = CogitHypervector::Filled(50000, Cogit::FromBloch(2 * std::acos(std::sqrt(0.8)), 0.3));
  BitVector bits = Measure(x, rng);
  double ones = 0;
  for (auto b : bits) ones += b;
  EXPECT_NEAR(ones / bits.size(), 0.2, 0.006);
}

TEST(SimilarityTest, Cosine) {
  CVector u(2), v(2);
  u << Complex(1, 0), Complex(0, 1);
  v << Complex(1, 0), Complex(0, -1);
  EXPECT_NEAR(CosineSimilarity(u, u), 1.0, 1e-15);
  EXPECT_NEAR(CosineSimilarity(u, v), 0.0, 1e-15);
}

TEST(DenseStateTest, ProductStateAndBorn) {
  std::vector<Cogit> c = {Cogit::One(), Cogit::Zero(), Cogit::Plus()};
  DenseState psi = DenseState::FromProduct(CogitHypervector(c));
  ASSERT_EQ(psi.dimension(), 8u);
  EXPECT_EQ(psi.CogitCount(), 3u);
  // Cogit 0 is the most significant bit: |1>|0>|+> = (|100> + |101>)/sqrt2.
  EXPECT_NEAR(BornProbability(psi, DenseState::Basis(8, 4)), 0.5, 1e-15);
  EXPECT_NEAR(BornProbability(psi, DenseState::Basis(8, 5)), 0.5, 1e-15);
  EXPECT_NEAR(BornProbability(psi, DenseState::Basis(8, 0)), 0.0, 1e-15);
}

TEST(DenseStateTest, PermutationMatchesHypervectorShift) {
  CounterRng rng = MakeStream(4, "dense-perm");
  auto x = CogitHypervector::Random(4, rng);
  DenseState a = PermuteDense(DenseState::FromProduct(x), 1);
  DenseState b = DenseState::FromProduct(Permute(x, 1));
  EXPECT_NEAR(BornProbability(a, b), 1.0, 1e-13);
}

TEST(DenseStateTest, PermutedOperatorCommutesWithShift) {
  CounterRng rng = MakeStream(5, "dense-op");
  UnitaryOperator h = UnitaryOperator::Random(8, rng);
  DenseState psi = DenseState::FromProduct(CogitHypervector::Random(3, rng));
  DenseState lhs = PermuteDense(ApplyDynamics(h, psi), 2);
  DenseState rhs = ApplyDynamics(PermuteOperator(h, 2, 3), PermuteDense(psi, 2));
  EXPECT_NEAR(BornProbability(lhs, rhs), 1.0, 1e-12);
}

TEST(DenseStateTest, ValidationRejectsBadMatrices) {
  CMatrix not_unit_trace = CMatrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{not_unit_trace}, ValidationError);
  CMatrix not_hermitian(2, 2);
  not_hermitian << 0.5, 0.3, 0.1, 0.5;
  EXPECT_THROW(DensityMatrix{not_hermitian}, ValidationError);
  CMatrix negative(2, 2);
  negative << 1.2, 0.0, 0.0, -0.2;
  EXPECT_THROW(DensityMatrix{negative}, ValidationError);
  CMatrix not_unitary = CMatrix::Identity(2, 2) * 1.1;
  EXPECT_THROW(UnitaryOperator{not_unitary}, ValidationError);
  EXPECT_THROW(DenseState(CVector::Zero(4)), DegenerateError);
}

TEST(DenseStateTest, SampleOutcomeFollowsBorn) {
  CVector amp(3);
  amp << 1.0, 0.0, std::sqrt(3.0);
  DenseState psi(amp);
  CounterRng rng = MakeStream(6, "outcome");
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 40000; ++i) ++counts[SampleOutcome(psi, rng)];
  EXPECT_EQ(counts[1], 0);
  EXPECT_NEAR(counts[2] / 40000.0, 0.75, 0.01);
}

}  // namespace
}  // namespace cns

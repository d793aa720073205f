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
#include "cns/model_io.h"
#include "cns/neural_divergence.h"
#include "cns/oda_models.h"

namespace cns {
namespace {

RVector Vec(std::initializer_list<double> v) {
  RVector out(v.size());
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

ReadoutModel SubsetReadout() {
  RMatrix w(2, 2);
  w << 1.0, -0.5, -1.0, 0.5;
  return ReadoutModel::Subset("sub", OdaLevel::kBeta, 4, {0, 2}, w, Vec({0.1, -0.1}));
}

TEST(VectorDistributionTest, ShiftAddsMeansAndVariances) {
  auto q = VectorDistribution::Gaussian(Vec({1, 2}), Vec({3, 0}));
  auto a = VectorDistribution::Gaussian(Vec({-1, 1}), Vec({4, 1}));
  auto s = ShiftDistribution(q, a);
  EXPECT_EQ(s.mean(), Vec({0, 3}));
  EXPECT_NEAR(s.scale()(0), 5.0, 1e-15);
  EXPECT_NEAR(s.scale()(1), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(a.TotalVariance(), 17.0);
  EXPECT_EQ(ShiftDistribution(q, VectorDistribution::Zero(2)), q);
}

TEST(VectorDistributionTest, SampleMatrixCouplesDraws) {
  auto q = VectorDistribution::Gaussian(Vec({0, 0, 0}), Vec({1, 1, 1}));
  auto q2 = VectorDistribution::Gaussian(Vec({1, 0, 0}), Vec({2, 1, 1}));
  RMatrix a = SampleMatrix(q, 3000, 5), b = SampleMatrix(q2, 3000, 5);
  ASSERT_EQ(a.rows(), 3);
  ASSERT_EQ(a.cols(), 3000);
  RVector diff = b.row(0).transpose() - 2.0 * a.row(0).transpose();
  EXPECT_LT((diff.array() - 1.0).abs().maxCoeff(), 1e-12);
  EXPECT_EQ(a.row(1), b.row(1));
  EXPECT_NEAR(a.row(2).mean(), 0.0, 0.07);
}

TEST(VectorDistributionTest, LogDensityHandlesPointMasses) {
  auto q = VectorDistribution::Gaussian(Vec({0, 1}), Vec({1, 0}));
  EXPECT_NEAR(q.LogDensity(Vec({0, 1})), -0.5 * std::log(2 * M_PI), 1e-14);
  EXPECT_EQ(q.LogDensity(Vec({0, 2})), -INFINITY);
}

TEST(ReadoutTest, SubsetModelIgnoresOtherCoordinates) {
  ReadoutModel f = SubsetReadout();
  RVector x = Vec({0.3, 9.0, -0.2, -7.0}), y = Vec({0.3, -4.0, -0.2, 2.0});
  EXPECT_LT((f.Probabilities(x) - f.Probabilities(y)).cwiseAbs().maxCoeff(), 1e-15);
  RVector p = f.Probabilities(x);
  EXPECT_NEAR(p.sum(), 1.0, 1e-15);
  // softmax of (0.3 + 0.1 + 0.1, -0.3 - 0.1 - 0.1) = logistic(1.0).
  EXPECT_NEAR(p(0), 1.0 / (1.0 + std::exp(-1.0)), 1e-15);
}

TEST(ReadoutTest, ConstantPrediction) {
  auto f = ReadoutModel::Constant("c", OdaLevel::kAlpha, 3, {0.25, 0.75});
  auto q = VectorDistribution::Gaussian(Vec({0, 0, 0}), Vec({1, 1, 1}));
  ProbabilityVector p = PredictReadout(f, q, 100, 1).OutcomeProbs();
  EXPECT_NEAR(p[1], 0.75, 1e-15);
  auto q2 = VectorDistribution::Gaussian(Vec({5, 5, 5}), Vec({1, 1, 1}));
  EXPECT_NEAR(ModelDissimilarityS(f, q, q2, {200, 1}), 0.0, 1e-7);
}

TEST(ReadoutTest, ValidateRejectsBadShapes) {
  ReadoutModel f = SubsetReadout();
  f.bias = Vec({0.0});
  EXPECT_THROW(f.Validate(), ValidationError);
  EXPECT_THROW(ReadoutClass(std::vector<ReadoutModel>{}), ValidationError);
}

TEST(DynamicsTest, GellMannBasis) {
  for (std::size_t k : {2u, 3u, 4u}) {
    auto basis = GellMannBasis(k);
    ASSERT_EQ(basis.size(), k * k - 1);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      EXPECT_LT(HermitianDeviation(basis[a]), 1e-15);
      EXPECT_NEAR(std::abs(basis[a].trace()), 0.0, 1e-15);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        EXPECT_NEAR(std::abs((basis[a] * basis[b]).trace() - (a == b ? 2.0 : 0.0)), 0.0,
                    1e-14);
      }
    }
  }
}

TEST(DynamicsTest, RotationIsUnitary) {
  RMatrix w = RMatrix::Constant(3, 2, 0.7);
  auto g = DynamicsModel::Rotation("rot", OdaLevel::kGamma, 2, w, Vec({0.1, 0.2, 0.3}));
  UnitaryOperator u = g.OperatorAt(Vec({1.5, -0.4}));
  EXPECT_LT(MaxAbsEntry(u.matrix().adjoint() * u.matrix() - CMatrix::Identity(2, 2)), 1e-13);
  auto id = DynamicsModel::Identity("id", 2, 2);
  EXPECT_LT(MaxAbsEntry(id.OperatorAt(Vec({3, 4})).matrix() - CMatrix::Identity(2, 2)), 1e-15);
}

TEST(DynamicsTest, IdentityChoiStateIsPure) {
  auto id = DynamicsModel::Identity("id", 3, 2);
  auto q = VectorDistribution::Gaussian(Vec({0, 0}), Vec({1, 1}));
  DensityMatrix choi = ChoiMixture(id, q, {100, 2});
  ASSERT_EQ(choi.dimension(), 9u);
  EXPECT_NEAR((choi.matrix() * choi.matrix()).trace().real(), 1.0, 1e-12);
}

TEST(DynamicsTest, OperatorDistances) {
  auto id = DynamicsModel::Identity("id", 2, 1);
  auto q = VectorDistribution::Gaussian(Vec({0}), Vec({1}));
  auto q2 = VectorDistribution::Gaussian(Vec({3}), Vec({1}));
  EXPECT_NEAR(MeanOperatorDistance(id, q, q2, {100, 3}), 0.0, 1e-15);
  EXPECT_NEAR(MeanDistanceToTarget(id, q, UnitaryOperator::Identity(2), {100, 3}), 0.0, 1e-15);
}

TEST(FitTest, SeparableDataIsLearned) {
  std::vector<LabeledSample> data;
  CounterRng rng = MakeStream(4, "fit");
  for (int i = 0; i < 200; ++i) {
    std::size_t label = i % 2;
    RVector x = Vec({rng.Normal() * 0.3 + (label ? 2.0 : -2.0), rng.Normal()});
    data.push_back({x, label});
  }
  for (ReadoutKind kind : {ReadoutKind::kLinearSoftmax, ReadoutKind::kNearestCentroid}) {
    FitResult r = FitReadout(kind, data, OdaLevel::kBeta, "fit");
    EXPECT_FALSE(r.degenerate);
    EXPECT_DOUBLE_EQ(r.training_accuracy, 1.0);
    EXPECT_EQ(r.model.outcomes(), 2u);
  }
}

TEST(FitTest, SingleClassIsFlagged) {
  std::vector<LabeledSample> data = {{Vec({1, 2}), 0}, {Vec({3, 4}), 0}};
  FitResult r = FitReadout(ReadoutKind::kLinearSoftmax, data, OdaLevel::kGamma, "one");
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(r.model.flagged);
  EXPECT_EQ(r.model.kind, ReadoutKind::kConstant);
}

TEST(ModelIoTest, RoundTripsAreBitExact) {
  ReadoutModel f = SubsetReadout();
  f.weights(0, 1) = 0.1 + 0.2;
  EXPECT_EQ(ReadoutModelFromJson(ToJson(f)), f);
  RMatrix w(1, 2);
  w << 1.0 / 3.0, -2.5e-300;
  auto g = DynamicsModel::Rotation("g", OdaLevel::kAlpha, 2, w, Vec({std::acos(-1.0)}));
  EXPECT_EQ(DynamicsModelFromJson(ToJson(g)), g);
  auto d = VectorDistribution::Gaussian(Vec({0.1, 1e-17}), Vec({2.0 / 7.0, 0.0}));
  EXPECT_EQ(VectorDistributionFromJson(ToJson(d)), d);
  auto e = VectorDistribution::Empirical({Vec({1, 2}), Vec({3, 4.5})});
  EXPECT_EQ(VectorDistributionFromJson(ToJson(e)), e);
  // Through text as well.
  auto text = ToJson(f).dump();
  EXPECT_EQ(ReadoutModelFromJson(nlohmann::json::parse(text)), f);
}

TEST(ModelIoTest, RejectsMalformedDocuments) {
  auto j = ToJson(SubsetReadout());
  j["version"] = 99;
  EXPECT_THROW(ReadoutModelFromJson(j), ValidationError);
  EXPECT_THROW(ReadoutModelFromJson(nlohmann::json::object()), ValidationError);
}

TEST(NeuralDivergenceTest, GaussianShiftMatchesQuadrature) {
  // Base-2 JS distance between N(0, 1) and N(1, 1) by scipy quadrature.
  auto p = VectorDistribution::Gaussian(Vec({0}), Vec({1}));
  auto q = VectorDistribution::Gaussian(Vec({1}), Vec({1}));
  EXPECT_NEAR(JsdEstimate(p, q, {20000, 3, 5}), 0.40093293678172265, 0.01);
  EXPECT_NEAR(JsdEstimate(p, p, {2000, 3, 5}), 0.0, 1e-7);
}

TEST(NeuralDivergenceTest, SingularSupports) {
  auto p = VectorDistribution::Gaussian(Vec({0, 0}), Vec({1, 0}));
  auto same = VectorDistribution::Gaussian(Vec({0, 0}), Vec({1, 0}));
  auto moved = VectorDistribution::Gaussian(Vec({0, 1}), Vec({1, 0}));
  EXPECT_NEAR(JsdEstimate(p, same, {500, 1, 5}), 0.0, 1e-7);
  EXPECT_DOUBLE_EQ(JsdEstimate(p, moved, {500, 1, 5}), 1.0);
}

TEST(NeuralDivergenceTest, EmpiricalProxySeparatesDistributions) {
  CounterRng rng = MakeStream(6, "emp");
  std::vector<RVector> a, b;
  for (int i = 0; i < 400; ++i) {
    a.push_back(Vec({rng.Normal(), rng.Normal()}));
    b.push_back(Vec({rng.Normal() + 6.0, rng.Normal()}));
  }
  double far = JsdEstimate(VectorDistribution::Empirical(a), VectorDistribution::Empirical(b),
                           {400, 1, 5});
  EXPECT_GT(far, 0.9);
  EXPECT_LE(far, 1.0 + 1e-12);
}

}  // namespace
}  // namespace cns

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

#ifndef CNS_ODA_MODELS_H_
#define CNS_ODA_MODELS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cns/dense_state.h"
#include "cns/divergence.h"
#include "cns/errors.h"
#include "cns/linalg.h"
#include "cns/random.h"

namespace cns {

// Provenance of a model: population, similar group, or single individual.
enum class OdaLevel { kAlpha, kBeta, kGamma };
std::string_view ToString(OdaLevel level);
OdaLevel ParseOdaLevel(std::string_view s);

// Distribution over neural signal vectors in R^m.
class VectorDistribution {
 public:
  enum class Kind { kGaussianDiagonal, kEmpirical };

  static VectorDistribution Gaussian(RVector mean, RVector scale);
  static VectorDistribution Empirical(std::vector<RVector> samples);
  // Zero-mean, zero-scale Gaussian: the null noise.
  static VectorDistribution Zero(std::size_t m);

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return static_cast<std::size_t>(mean_.size()); }
  // Gaussian mean, or empirical sample mean.
  const RVector& mean() const { return mean_; }
  // Gaussian scale, or empirical per-coordinate standard deviation.
  const RVector& scale() const { return scale_; }
  const std::vector<RVector>& samples() const { return samples_; }
  double TotalVariance() const { return scale_.squaredNorm(); }

  // One draw. Gaussian kinds consume exactly m normals in coordinate order,
  // so two Gaussians sampled from equal streams are coupled: x = mean + scale z.
  void Sample(CounterRng& rng, Eigen::Ref<RVector> out) const;

  // Gaussian log density. Coordinates with zero scale are point masses and
  // are skipped when x matches the mean, else the result is -inf.
  double LogDensity(const RVector& x) const;

  bool operator==(const VectorDistribution& other) const;

 private:
  VectorDistribution() = default;
  Kind kind_ = Kind::kGaussianDiagonal;
  RVector mean_;
  RVector scale_;
  std::vector<RVector> samples_;
};

// Q + aleph. Gaussian + Gaussian adds means and variances. Anything involving
// an empirical operand becomes an empirical pairwise sum, paired by `seed`.
VectorDistribution ShiftDistribution(const VectorDistribution& q,
                                     const VectorDistribution& aleph,
                                     std::uint64_t seed = 0);

// m x samples matrix of draws. Chunk c uses stream (seed, "neural", c), so
// equal (samples, seed) couples draws across distributions.
RMatrix SampleMatrix(const VectorDistribution& q, std::size_t samples, std::uint64_t seed);

// Density over K >= 2 outcomes of the cogit basis.
class CognitiveDistribution {
 public:
  explicit CognitiveDistribution(DensityMatrix density);
  static CognitiveDistribution FromProbabilities(const std::vector<double>& probs);

  const DensityMatrix& density() const { return density_; }
  ProbabilityVector OutcomeProbs() const;
  std::size_t outcomes() const { return density_.dimension(); }

 private:
  DensityMatrix density_;
};

enum class ReadoutKind { kConstant, kLinearSoftmax, kNearestCentroid };
std::string_view ToString(ReadoutKind kind);
ReadoutKind ParseReadoutKind(std::string_view s);

// Neural-to-cognitive readout with a diagonal K-outcome output.
// Linear softmax: probs = softmax(W x_S + b). Nearest centroid:
// probs = softmax(-|x_S - c_k|^2 / temperature). x_S is x restricted to
// feature_subset when present, else all of x.
struct ReadoutModel {
  std::string name;
  OdaLevel oda_level = OdaLevel::kAlpha;
  ReadoutKind kind = ReadoutKind::kConstant;
  std::size_t input_dimension = 0;
  RMatrix weights;      // K x |S| (linear) or centroids K x |S|
  RVector bias;         // K (linear), fixed probabilities (constant)
  double temperature = 1.0;
  std::optional<std::vector<std::size_t>> feature_subset;
  bool flagged = false;  // set by degenerate fits

  static ReadoutModel Constant(std::string name, OdaLevel level, std::size_t input_dimension,
                               const std::vector<double>& probs);
  static ReadoutModel LinearSoftmax(std::string name, OdaLevel level, RMatrix weights,
                                    RVector bias);
  // Weights act on x restricted to `subset` only.
  static ReadoutModel Subset(std::string name, OdaLevel level, std::size_t input_dimension,
                             std::vector<std::size_t> subset, RMatrix weights, RVector bias);
  static ReadoutModel NearestCentroid(std::string name, OdaLevel level,
                                      std::size_t input_dimension, RMatrix centroids,
                                      double temperature,
                                      std::optional<std::vector<std::size_t>> subset = {});

  std::size_t outcomes() const;
  // Throws ValidationError on inconsistent shapes.
  void Validate() const;
  RVector Probabilities(const RVector& x) const;
  // Column-wise probabilities for an m x N batch.
  RMatrix BatchProbabilities(const RMatrix& xs) const;

  bool operator==(const ReadoutModel& other) const;
};

// Hermitian orthogonal basis of traceless K x K matrices (generalized
// Gell-Mann), K^2 - 1 elements with tr(L_a L_b) = 2 delta_ab.
std::vector<CMatrix> GellMannBasis(std::size_t k);

// Rotation dynamics U(x) = exp(i sum_l (w_l . x + c_l) L_l). The generator
// i H(x) is skew-Hermitian, so U is unitary by construction.
struct DynamicsModel {
  std::string name;
  OdaLevel oda_level = OdaLevel::kAlpha;
  std::size_t cogit_dimension = 2;   // K
  std::size_t input_dimension = 0;   // m
  RMatrix weights;                   // L x m, L <= K^2 - 1
  RVector offset;                    // L

  static DynamicsModel Rotation(std::string name, OdaLevel level, std::size_t k,
                                RMatrix weights, RVector offset = RVector());
  // Ignores its input: U = identity.
  static DynamicsModel Identity(std::string name, std::size_t k, std::size_t m);

  void Validate() const;
  CMatrix Hamiltonian(const RVector& x) const;
  UnitaryOperator OperatorAt(const RVector& x) const;

  bool operator==(const DynamicsModel& other) const;
};

template <typename Model>
class HypothesisClass {
 public:
  explicit HypothesisClass(std::vector<Model> members) : members_(std::move(members)) {
    if (members_.empty()) throw ValidationError("HypothesisClass: must be non-empty");
  }
  const std::vector<Model>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<Model> members_;
};

using ReadoutClass = HypothesisClass<ReadoutModel>;
using DynamicsClass = HypothesisClass<DynamicsModel>;

// Monte Carlo sample count and seed for predictions.
struct McConfig {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};

// Average of per-sample diagonal densities.
CognitiveDistribution PredictReadout(const ReadoutModel& f, const VectorDistribution& q,
                                     std::size_t samples, std::uint64_t seed);

// exp of the mean generator, i.e. U(mean of the sampled x).
UnitaryOperator PredictDynamics(const DynamicsModel& g, const VectorDistribution& q,
                                std::size_t samples, std::uint64_t seed);

// JS distance (base 2) between predicted outcome distributions under q and q2.
double ModelDissimilarityS(const ReadoutModel& f, const VectorDistribution& q,
                           const VectorDistribution& q2, const McConfig& config);

// (1/N) sum_s ||U(x_s) - U(x'_s)|| with x_s ~ q, x'_s ~ q2 on shared streams.
double MeanOperatorDistance(const DynamicsModel& g, const VectorDistribution& q,
                            const VectorDistribution& q2, const McConfig& config);

// (1/N) sum_s ||U(x_s) - phi|| with x_s ~ q.
double MeanDistanceToTarget(const DynamicsModel& g, const VectorDistribution& q,
                            const UnitaryOperator& phi, const McConfig& config);

// Channel-state embedding averaged over q: E_x |Omega_U(x)><Omega_U(x)|,
// |Omega_U> = (I (x) U) sum_i |ii> / sqrt(K).
DensityMatrix ChoiMixture(const DynamicsModel& g, const VectorDistribution& q,
                          const McConfig& config);

struct LabeledSample {
  RVector x;
  std::size_t label = 0;
};

struct FitOptions {
  std::size_t outcomes = 0;       // 0: one past the largest label
  std::size_t iterations = 2000;  // gradient steps (linear softmax)
  double learning_rate = 0.5;
  double l2 = 1e-4;
  double temperature = 1.0;       // nearest centroid
  std::optional<std::vector<std::size_t>> feature_subset;
};

struct FitResult {
  ReadoutModel model;
  double training_accuracy = 0.0;
  bool degenerate = false;
};

// Full-batch softmax regression from zero init, or class means for
// nearest centroid. Deterministic. A single-class dataset returns a flagged
// constant model.
FitResult FitReadout(ReadoutKind kind, const std::vector<LabeledSample>& data,
                     OdaLevel level, std::string name, const FitOptions& options = {});

}  // namespace cns

#endif  // CNS_ODA_MODELS_H_

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

#include "cns/oda_models.h"

#include <algorithm>
#include <cmath>
#include <list>
#include <memory>
#include <mutex>
#include <numbers>
#include <set>

#include "cns/parallel.h"

namespace cns {
namespace {

bool SameMatrix(const RMatrix& a, const RMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool SameVector(const RVector& a, const RVector& b) {
  return a.size() == b.size() && a == b;
}

void SoftmaxInPlace(Eigen::Ref<RVector> v) {
  double m = v.maxCoeff();
  v = (v.array() - m).exp();
  v /= v.sum();
}

// x restricted to the subset, or x itself.
RMatrix Restrict(const RMatrix& xs, const std::optional<std::vector<std::size_t>>& subset) {
  if (!subset) return xs;
  RMatrix out(static_cast<Eigen::Index>(subset->size()), xs.cols());
  for (std::size_t i = 0; i < subset->size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = xs.row(static_cast<Eigen::Index>((*subset)[i]));
  }
  return out;
}

// Fisher-Yates with our own generator so the pairing is portable.
std::vector<std::size_t> SeededPermutation(std::size_t n, CounterRng& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    auto j = static_cast<std::size_t>(rng.Uniform() * static_cast<double>(i));
    if (j >= i) j = i - 1;
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

void CheckCompatible(std::size_t model_m, std::size_t dist_m, const char* what) {
  if (model_m != dist_m) {
    throw DimensionError(std::string(what) + ": model expects m = " +
                         std::to_string(model_m) + ", distribution has m = " +
                         std::to_string(dist_m));
  }
}

}  // namespace

std::string_view ToString(OdaLevel level) {
  switch (level) {
    case OdaLevel::kAlpha: return "alpha";
    case OdaLevel::kBeta: return "beta";
    case OdaLevel::kGamma: return "gamma";
  }
  return "alpha";
}

OdaLevel ParseOdaLevel(std::string_view s) {
  if (s == "alpha") return OdaLevel::kAlpha;
  if (s == "beta") return OdaLevel::kBeta;
  if (s == "gamma") return OdaLevel::kGamma;
  throw ValidationError("unknown ODA level '" + std::string(s) + "'");
}

std::string_view ToString(ReadoutKind kind) {
  switch (kind) {
    case ReadoutKind::kConstant: return "constant";
    case ReadoutKind::kLinearSoftmax: return "linear-softmax";
    case ReadoutKind::kNearestCentroid: return "nearest-centroid";
  }
  return "constant";
}

ReadoutKind ParseReadoutKind(std::string_view s) {
  if (s == "constant") return ReadoutKind::kConstant;
  if (s == "linear-softmax") return ReadoutKind::kLinearSoftmax;
  if (s == "nearest-centroid") return ReadoutKind::kNearestCentroid;
  throw ValidationError("unknown readout kind '" + std::string(s) + "'");
}

// ---- VectorDistribution

VectorDistribution VectorDistribution::Gaussian(RVector mean, RVector scale) {
  if (mean.size() < 1) throw ValidationError("VectorDistribution: m must be >= 1");
  if (mean.size() != scale.size()) {
    throw DimensionError("VectorDistribution: mean and scale lengths differ");
  }
  for (Eigen::Index i = 0; i < scale.size(); ++i) {
    if (!(scale(i) >= 0.0) || !std::isfinite(scale(i)) || !std::isfinite(mean(i))) {
      throw ValidationError("VectorDistribution: scales must be finite and >= 0");
    }
  }
  VectorDistribution d;
  d.kind_ = Kind::kGaussianDiagonal;
  d.mean_ = std::move(mean);
  d.scale_ = std::move(scale);
  return d;
}

VectorDistribution VectorDistribution::Empirical(std::vector<RVector> samples) {
  if (samples.empty()) throw ValidationError("VectorDistribution: no empirical samples");
  Eigen::Index m = samples.front().size();
  if (m < 1) throw ValidationError("VectorDistribution: m must be >= 1");
  for (const auto& s : samples) {
    if (s.size() != m) throw DimensionError("VectorDistribution: ragged samples");
  }
  VectorDistribution d;
  d.kind_ = Kind::kEmpirical;
  double n = static_cast<double>(samples.size());
  d.mean_ = RVector::Zero(m);
  for (const auto& s : samples) d.mean_ += s;
  d.mean_ /= n;
  d.scale_ = RVector::Zero(m);
  if (samples.size() > 1) {
    for (const auto& s : samples) d.scale_ += (s - d.mean_).cwiseAbs2();
    d.scale_ = (d.scale_ / (n - 1)).cwiseSqrt();
  }
  d.samples_ = std::move(samples);
  return d;
}

VectorDistribution VectorDistribution::Zero(std::size_t m) {
  auto mm = static_cast<Eigen::Index>(m);
  return Gaussian(RVector::Zero(mm), RVector::Zero(mm));
}

void VectorDistribution::Sample(CounterRng& rng, Eigen::Ref<RVector> out) const {
  if (kind_ == Kind::kGaussianDiagonal) {
    for (Eigen::Index i = 0; i < mean_.size(); ++i) out(i) = mean_(i) + scale_(i) * rng.Normal();
    return;
  }
  auto n = samples_.size();
  auto idx = static_cast<std::size_t>(rng.Uniform() * static_cast<double>(n));
  out = samples_[std::min(idx, n - 1)];
}

double VectorDistribution::LogDensity(const RVector& x) const {
  if (kind_ != Kind::kGaussianDiagonal) {
    throw MethodInapplicableError("LogDensity: empirical distributions have no density");
  }
  if (x.size() != mean_.size()) throw DimensionError("LogDensity: length mismatch");
  constexpr double kHalfLog2Pi = 0.91893853320467274178;
  double lp = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (scale_(i) == 0.0) {
      if (x(i) != mean_(i)) return -std::numeric_limits<double>::infinity();
      continue;
    }
    double z = (x(i) - mean_(i)) / scale_(i);
    lp += -0.5 * z * z - std::log(scale_(i)) - kHalfLog2Pi;
  }
  return lp;
}

bool VectorDistribution::operator==(const VectorDistribution& other) const {
  if (kind_ != other.kind_ || !SameVector(mean_, other.mean_) ||
      !SameVector(scale_, other.scale_) || samples_.size() != other.samples_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!SameVector(samples_[i], other.samples_[i])) return false;
  }
  return true;
}

VectorDistribution ShiftDistribution(const VectorDistribution& q,
                                     const VectorDistribution& aleph, std::uint64_t seed) {
  if (q.dimension() != aleph.dimension()) {
    throw DimensionError("ShiftDistribution: dimensions differ");
  }
  using Kind = VectorDistribution::Kind;
  if (q.kind() == Kind::kGaussianDiagonal && aleph.kind() == Kind::kGaussianDiagonal) {
    RVector scale = (q.scale().cwiseAbs2() + aleph.scale().cwiseAbs2()).cwiseSqrt();
    return VectorDistribution::Gaussian(q.mean() + aleph.mean(), std::move(scale));
  }
  std::size_t n = std::max(q.samples().size(), aleph.samples().size());
  CounterRng gauss = MakeStream(seed, "shift-gaussian");
  CounterRng pairing = MakeStream(seed, "shift-pairing");
  auto m = static_cast<Eigen::Index>(q.dimension());
  auto draw = [&](const VectorDistribution& d, std::size_t i,
                  const std::vector<std::size_t>* perm) {
    RVector x(m);
    if (d.kind() == Kind::kGaussianDiagonal) {
      d.Sample(gauss, x);
    } else {
      std::size_t k = i % d.samples().size();
      x = d.samples()[perm ? (*perm)[k] : k];
    }
    return x;
  };
  std::vector<std::size_t> perm;
  if (aleph.kind() == Kind::kEmpirical) perm = SeededPermutation(aleph.samples().size(), pairing);
  std::vector<RVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RVector a = draw(q, i, nullptr);
    RVector b = draw(aleph, i, perm.empty() ? nullptr : &perm);
    out.push_back(a + b);
  }
  return VectorDistribution::Empirical(std::move(out));
}

namespace {

// Standard normals laid out exactly as VectorDistribution::Sample consumes
// them. Small cache: optimizers request the same block thousands of times.
std::shared_ptr<const RMatrix> NormalBlock(Eigen::Index m, std::size_t samples,
                                           std::uint64_t seed) {
  struct Entry {
    Eigen::Index m;
    std::size_t samples;
    std::uint64_t seed;
    std::shared_ptr<const RMatrix> block;
  };
  static std::mutex mu;
  static std::list<Entry> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    for (auto it = cache.begin(); it != cache.end(); ++it) {
      if (it->m == m && it->samples == samples && it->seed == seed) {
        cache.splice(cache.begin(), cache, it);
        return cache.front().block;
      }
    }
  }
  auto z = std::make_shared<RMatrix>(m, static_cast<Eigen::Index>(samples));
  std::size_t chunks = ChunkCount(samples);
  for (std::size_t c = 0; c < chunks; ++c) {
    Chunk ch = ChunkAt(samples, c);
    CounterRng rng = MakeStream(seed, "neural", c);
    for (std::size_t s = ch.begin; s < ch.end; ++s)
      for (Eigen::Index i = 0; i < m; ++i) (*z)(i, static_cast<Eigen::Index>(s)) = rng.Normal();
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.push_front({m, samples, seed, z});
  if (cache.size() > 16) cache.pop_back();
  return z;
}

}  // namespace

RMatrix SampleMatrix(const VectorDistribution& q, std::size_t samples, std::uint64_t seed) {
  if (q.kind() == VectorDistribution::Kind::kGaussianDiagonal) {
    auto z = NormalBlock(static_cast<Eigen::Index>(q.dimension()), samples, seed);
    RMatrix xs = (z->array().colwise() * q.scale().array()).matrix();
    xs.colwise() += q.mean();
    return xs;
  }
  RMatrix xs(static_cast<Eigen::Index>(q.dimension()), static_cast<Eigen::Index>(samples));
  std::size_t chunks = ChunkCount(samples);
  for (std::size_t c = 0; c < chunks; ++c) {
    Chunk ch = ChunkAt(samples, c);
    CounterRng rng = MakeStream(seed, "neural", c);
    for (std::size_t s = ch.begin; s < ch.end; ++s) q.Sample(rng, xs.col(static_cast<Eigen::Index>(s)));
  }
  return xs;
}

// ---- CognitiveDistribution

CognitiveDistribution::CognitiveDistribution(DensityMatrix density)
    : density_(std::move(density)) {
  if (density_.dimension() < 2) {
    throw ValidationError("CognitiveDistribution: needs K >= 2 outcomes");
  }
}

CognitiveDistribution CognitiveDistribution::FromProbabilities(
    const std::vector<double>& probs) {
  ProbabilityVector p(probs);
  return CognitiveDistribution(DensityMatrix::FromDiagonal(p.values()));
}

ProbabilityVector CognitiveDistribution::OutcomeProbs() const {
  std::vector<double> p = density_.DiagonalProbabilities();
  double s = 0.0;
  for (double x : p) s += x;
  for (double& x : p) x /= s;
  return ProbabilityVector(std::move(p));
}

// ---- ReadoutModel

ReadoutModel ReadoutModel::Constant(std::string name, OdaLevel level,
                                    std::size_t input_dimension,
                                    const std::vector<double>& probs) {
  ProbabilityVector p(probs);
  ReadoutModel f;
  f.name = std::move(name);
  f.oda_level = level;
  f.kind = ReadoutKind::kConstant;
  f.input_dimension = input_dimension;
  f.bias = Eigen::Map<const RVector>(p.values().data(), static_cast<Eigen::Index>(p.size()));
  f.Validate();
  return f;
}

ReadoutModel ReadoutModel::LinearSoftmax(std::string name, OdaLevel level, RMatrix weights,
                                         RVector bias) {
  ReadoutModel f;
  f.name = std::move(name);
  f.oda_level = level;
  f.kind = ReadoutKind::kLinearSoftmax;
  f.input_dimension = static_cast<std::size_t>(weights.cols());
  f.weights = std::move(weights);
  f.bias = std::move(bias);
  f.Validate();
  return f;
}

ReadoutModel ReadoutModel::Subset(std::string name, OdaLevel level,
                                  std::size_t input_dimension,
                                  std::vector<std::size_t> subset, RMatrix weights,
                                  RVector bias) {
  ReadoutModel f;
  f.name = std::move(name);
  f.oda_level = level;
  f.kind = ReadoutKind::kLinearSoftmax;
  f.input_dimension = input_dimension;
  f.weights = std::move(weights);
  f.bias = std::move(bias);
  f.feature_subset = std::move(subset);
  f.Validate();
  return f;
}

ReadoutModel ReadoutModel::NearestCentroid(std::string name, OdaLevel level,
                                           std::size_t input_dimension, RMatrix centroids,
                                           double temperature,
                                           std::optional<std::vector<std::size_t>> subset) {
  ReadoutModel f;
  f.name = std::move(name);
  f.oda_level = level;
  f.kind = ReadoutKind::kNearestCentroid;
  f.input_dimension = input_dimension;
  f.weights = std::move(centroids);
  f.temperature = temperature;
  f.feature_subset = std::move(subset);
  f.Validate();
  return f;
}

std::size_t ReadoutModel::outcomes() const {
  return static_cast<std::size_t>(kind == ReadoutKind::kLinearSoftmax ||
                                          kind == ReadoutKind::kConstant
                                      ? bias.size()
                                      : weights.rows());
}

void ReadoutModel::Validate() const {
  if (input_dimension < 1) throw ValidationError("ReadoutModel: input dimension must be >= 1");
  if (outcomes() < 2) throw ValidationError("ReadoutModel: needs K >= 2 outcomes");
  std::size_t width = input_dimension;
  if (feature_subset) {
    if (feature_subset->empty()) throw ValidationError("ReadoutModel: empty feature subset");
    std::set<std::size_t> seen;
    for (std::size_t i : *feature_subset) {
      if (i >= input_dimension) throw ValidationError("ReadoutModel: subset index out of range");
      if (!seen.insert(i).second) throw ValidationError("ReadoutModel: repeated subset index");
    }
    width = feature_subset->size();
  }
  switch (kind) {
    case ReadoutKind::kConstant:
      ProbabilityVector(std::vector<double>(bias.data(), bias.data() + bias.size()));
      break;
    case ReadoutKind::kLinearSoftmax:
      if (static_cast<std::size_t>(weights.cols()) != width || weights.rows() != bias.size()) {
        throw ValidationError("ReadoutModel: weight shape does not match K x |S|");
      }
      if (!weights.allFinite() || !bias.allFinite()) {
        throw ValidationError("ReadoutModel: non-finite parameters");
      }
      break;
    case ReadoutKind::kNearestCentroid:
      if (static_cast<std::size_t>(weights.cols()) != width) {
        throw ValidationError("ReadoutModel: centroid shape does not match K x |S|");
      }
      if (!(temperature > 0.0)) throw ValidationError("ReadoutModel: temperature must be > 0");
      break;
  }
}

RMatrix ReadoutModel::BatchProbabilities(const RMatrix& xs) const {
  if (static_cast<std::size_t>(xs.rows()) != input_dimension) {
    throw DimensionError("ReadoutModel: input has wrong dimension");
  }
  auto k = static_cast<Eigen::Index>(outcomes());
  RMatrix out(k, xs.cols());
  if (kind == ReadoutKind::kConstant) {
    out = bias.replicate(1, xs.cols());
    return out;
  }
  RMatrix xr = Restrict(xs, feature_subset);
  if (kind == ReadoutKind::kLinearSoftmax) {
    out = (weights * xr).colwise() + bias;
  } else {
    for (Eigen::Index c = 0; c < xr.cols(); ++c) {
      for (Eigen::Index j = 0; j < k; ++j) {
        out(j, c) = -(xr.col(c) - weights.row(j).transpose()).squaredNorm() / temperature;
      }
    }
  }
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    RVector col = out.col(c);
    SoftmaxInPlace(col);
    out.col(c) = col;
  }
  return out;
}

RVector ReadoutModel::Probabilities(const RVector& x) const {
  RMatrix xs = x;
  return BatchProbabilities(xs).col(0);
}

bool ReadoutModel::operator==(const ReadoutModel& o) const {
  return name == o.name && oda_level == o.oda_level && kind == o.kind &&
         input_dimension == o.input_dimension && SameMatrix(weights, o.weights) &&
         SameVector(bias, o.bias) && temperature == o.temperature &&
         feature_subset == o.feature_subset && flagged == o.flagged;
}

// ---- Dynamics

std::vector<CMatrix> GellMannBasis(std::size_t k) {
  auto kk = static_cast<Eigen::Index>(k);
  std::vector<CMatrix> basis;
  for (Eigen::Index j = 0; j < kk; ++j) {
    for (Eigen::Index l = j + 1; l < kk; ++l) {
      CMatrix s = CMatrix::Zero(kk, kk);
      s(j, l) = 1.0;
      s(l, j) = 1.0;
      basis.push_back(s);
      CMatrix a = CMatrix::Zero(kk, kk);
      a(j, l) = Complex(0, -1);
      a(l, j) = Complex(0, 1);
      basis.push_back(a);
    }
  }
  for (Eigen::Index l = 1; l < kk; ++l) {
    CMatrix d = CMatrix::Zero(kk, kk);
    double c = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (Eigen::Index j = 0; j < l; ++j) d(j, j) = c;
    d(l, l) = -c * static_cast<double>(l);
    basis.push_back(d);
  }
  return basis;
}

DynamicsModel DynamicsModel::Rotation(std::string name, OdaLevel level, std::size_t k,
                                      RMatrix weights, RVector offset) {
  DynamicsModel g;
  g.name = std::move(name);
  g.oda_level = level;
  g.cogit_dimension = k;
  g.input_dimension = static_cast<std::size_t>(weights.cols());
  if (offset.size() == 0) offset = RVector::Zero(weights.rows());
  g.weights = std::move(weights);
  g.offset = std::move(offset);
  g.Validate();
  return g;
}

DynamicsModel DynamicsModel::Identity(std::string name, std::size_t k, std::size_t m) {
  DynamicsModel g;
  g.name = std::move(name);
  g.cogit_dimension = k;
  g.input_dimension = m;
  g.weights = RMatrix::Zero(0, static_cast<Eigen::Index>(m));
  g.offset = RVector::Zero(0);
  g.Validate();
  return g;
}

void DynamicsModel::Validate() const {
  if (cogit_dimension < 2) throw ValidationError("DynamicsModel: K must be >= 2");
  if (input_dimension < 1) throw ValidationError("DynamicsModel: m must be >= 1");
  std::size_t max_l = cogit_dimension * cogit_dimension - 1;
  if (static_cast<std::size_t>(weights.rows()) > max_l) {
    throw ValidationError("DynamicsModel: more generators than K^2 - 1");
  }
  if (static_cast<std::size_t>(weights.cols()) != input_dimension ||
      offset.size() != weights.rows()) {
    throw ValidationError("DynamicsModel: weight/offset shapes inconsistent");
  }
  if (!weights.allFinite() || !offset.allFinite()) {
    throw ValidationError("DynamicsModel: non-finite parameters");
  }
}

CMatrix DynamicsModel::Hamiltonian(const RVector& x) const {
  if (static_cast<std::size_t>(x.size()) != input_dimension) {
    throw DimensionError("DynamicsModel: input has wrong dimension");
  }
  auto k = static_cast<Eigen::Index>(cogit_dimension);
  CMatrix h = CMatrix::Zero(k, k);
  if (weights.rows() == 0) return h;
  static thread_local std::size_t cached_k = 0;
  static thread_local std::vector<CMatrix> basis;
  if (cached_k != cogit_dimension) {
    basis = GellMannBasis(cogit_dimension);
    cached_k = cogit_dimension;
  }
  RVector coeff = weights * x + offset;
  for (Eigen::Index l = 0; l < coeff.size(); ++l) h += coeff(l) * basis[static_cast<std::size_t>(l)];
  return h;
}

UnitaryOperator DynamicsModel::OperatorAt(const RVector& x) const {
  return UnitaryOperator(ExpIHermitian(Hamiltonian(x)));
}

bool DynamicsModel::operator==(const DynamicsModel& o) const {
  return name == o.name && oda_level == o.oda_level &&
         cogit_dimension == o.cogit_dimension && input_dimension == o.input_dimension &&
         SameMatrix(weights, o.weights) && SameVector(offset, o.offset);
}

// ---- Predictions

CognitiveDistribution PredictReadout(const ReadoutModel& f, const VectorDistribution& q,
                                     std::size_t samples, std::uint64_t seed) {
  CheckCompatible(f.input_dimension, q.dimension(), "PredictReadout");
  if (samples < 1) throw ValidationError("PredictReadout: samples must be >= 1");
  RVector avg;
  if (f.kind == ReadoutKind::kConstant) {
    avg = f.bias;
  } else {
    avg = f.BatchProbabilities(SampleMatrix(q, samples, seed)).rowwise().mean();
  }
  avg /= avg.sum();
  return CognitiveDistribution::FromProbabilities(
      std::vector<double>(avg.data(), avg.data() + avg.size()));
}

UnitaryOperator PredictDynamics(const DynamicsModel& g, const VectorDistribution& q,
                                std::size_t samples, std::uint64_t seed) {
  CheckCompatible(g.input_dimension, q.dimension(), "PredictDynamics");
  if (samples < 1) throw ValidationError("PredictDynamics: samples must be >= 1");
  RVector mean = SampleMatrix(q, samples, seed).rowwise().mean();
  return g.OperatorAt(mean);
}

double ModelDissimilarityS(const ReadoutModel& f, const VectorDistribution& q,
                           const VectorDistribution& q2, const McConfig& config) {
  CognitiveDistribution a = PredictReadout(f, q, config.samples, config.seed);
  CognitiveDistribution b = PredictReadout(f, q2, config.samples, config.seed);
  return JsdClassical(a.OutcomeProbs(), b.OutcomeProbs());
}

double MeanOperatorDistance(const DynamicsModel& g, const VectorDistribution& q,
                            const VectorDistribution& q2, const McConfig& config) {
  CheckCompatible(g.input_dimension, q.dimension(), "MeanOperatorDistance");
  CheckCompatible(g.input_dimension, q2.dimension(), "MeanOperatorDistance");
  if (g.weights.rows() == 0) return 0.0;
  RMatrix a = SampleMatrix(q, config.samples, config.seed);
  RMatrix b = SampleMatrix(q2, config.samples, config.seed);
  double sum = 0.0;
  for (Eigen::Index s = 0; s < a.cols(); ++s) {
    CMatrix d = g.OperatorAt(a.col(s)).matrix() - g.OperatorAt(b.col(s)).matrix();
    sum += SpectralNorm(d);
  }
  return sum / static_cast<double>(config.samples);
}

double MeanDistanceToTarget(const DynamicsModel& g, const VectorDistribution& q,
                            const UnitaryOperator& phi, const McConfig& config) {
  CheckCompatible(g.input_dimension, q.dimension(), "MeanDistanceToTarget");
  if (phi.dimension() != g.cogit_dimension) {
    throw DimensionError("MeanDistanceToTarget: target operator has wrong dimension");
  }
  RMatrix a = SampleMatrix(q, config.samples, config.seed);
  double sum = 0.0;
  for (Eigen::Index s = 0; s < a.cols(); ++s) {
    sum += SpectralNorm(g.OperatorAt(a.col(s)).matrix() - phi.matrix());
  }
  return sum / static_cast<double>(config.samples);
}

DensityMatrix ChoiMixture(const DynamicsModel& g, const VectorDistribution& q,
                          const McConfig& config) {
  CheckCompatible(g.input_dimension, q.dimension(), "ChoiMixture");
  auto k = static_cast<Eigen::Index>(g.cogit_dimension);
  RMatrix xs = SampleMatrix(q, config.samples, config.seed);
  CMatrix rho = CMatrix::Zero(k * k, k * k);
  CVector v(k * k);
  double norm = 1.0 / std::sqrt(static_cast<double>(k));
  for (Eigen::Index s = 0; s < xs.cols(); ++s) {
    CMatrix u = g.OperatorAt(xs.col(s)).matrix();
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) v(i * k + j) = u(j, i) * norm;
    rho.noalias() += v * v.adjoint();
  }
  rho /= static_cast<double>(xs.cols());
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

// ---- Fitting

FitResult FitReadout(ReadoutKind kind, const std::vector<LabeledSample>& data,
                     OdaLevel level, std::string name, const FitOptions& options) {
  if (data.empty()) throw ValidationError("FitReadout: empty dataset");
  auto m = static_cast<std::size_t>(data.front().x.size());
  std::size_t max_label = 0;
  std::set<std::size_t> labels;
  for (const auto& s : data) {
    if (static_cast<std::size_t>(s.x.size()) != m) throw DimensionError("FitReadout: ragged inputs");
    max_label = std::max(max_label, s.label);
    labels.insert(s.label);
  }
  std::size_t k = options.outcomes == 0 ? max_label + 1 : options.outcomes;
  if (max_label >= k) throw ValidationError("FitReadout: label outside [0, K)");
  k = std::max<std::size_t>(k, 2);

  if (labels.size() == 1 || kind == ReadoutKind::kConstant) {
    std::vector<double> probs(k, 0.0);
    for (const auto& s : data) probs[s.label] += 1.0;
    for (double& p : probs) p /= static_cast<double>(data.size());
    FitResult r{ReadoutModel::Constant(std::move(name), level, m, probs), 0.0,
                labels.size() == 1};
    r.model.flagged = r.degenerate;
    std::size_t best = static_cast<std::size_t>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());
    std::size_t hits = 0;
    for (const auto& s : data) hits += s.label == best;
    r.training_accuracy = static_cast<double>(hits) / static_cast<double>(data.size());
    return r;
  }

  auto n = static_cast<Eigen::Index>(data.size());
  RMatrix xs(static_cast<Eigen::Index>(m), n);
  for (Eigen::Index i = 0; i < n; ++i) xs.col(i) = data[static_cast<std::size_t>(i)].x;
  RMatrix xr = Restrict(xs, options.feature_subset);
  auto kk = static_cast<Eigen::Index>(k);
  auto width = xr.rows();

  ReadoutModel model;
  if (kind == ReadoutKind::kLinearSoftmax) {
    RMatrix y = RMatrix::Zero(kk, n);
    for (Eigen::Index i = 0; i < n; ++i) y(static_cast<Eigen::Index>(data[static_cast<std::size_t>(i)].label), i) = 1.0;
    RMatrix w = RMatrix::Zero(kk, width);
    RVector b = RVector::Zero(kk);
    double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t it = 0; it < options.iterations; ++it) {
      RMatrix p = (w * xr).colwise() + b;
      for (Eigen::Index c = 0; c < n; ++c) {
        RVector col = p.col(c);
        SoftmaxInPlace(col);
        p.col(c) = col;
      }
      RMatrix err = p - y;
      RMatrix gw = err * xr.transpose() * inv_n + options.l2 * w;
      RVector gb = err.rowwise().sum() * inv_n;
      w -= options.learning_rate * gw;
      b -= options.learning_rate * gb;
    }
    if (options.feature_subset) {
      model = ReadoutModel::Subset(std::move(name), level, m, *options.feature_subset,
                                   std::move(w), std::move(b));
    } else {
      model = ReadoutModel::LinearSoftmax(std::move(name), level, std::move(w), std::move(b));
    }
  } else {
    RMatrix c = RMatrix::Zero(kk, width);
    std::vector<double> counts(k, 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      std::size_t l = data[static_cast<std::size_t>(i)].label;
      c.row(static_cast<Eigen::Index>(l)) += xr.col(i).transpose();
      counts[l] += 1.0;
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (counts[l] == 0.0) {
        throw ValidationError("FitReadout: class " + std::to_string(l) + " has no samples");
      }
      c.row(static_cast<Eigen::Index>(l)) /= counts[l];
    }
    model = ReadoutModel::NearestCentroid(std::move(name), level, m, std::move(c),
                                          options.temperature, options.feature_subset);
  }

  RMatrix probs = model.BatchProbabilities(xs);
  std::size_t hits = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index arg;
    probs.col(i).maxCoeff(&arg);
    hits += static_cast<std::size_t>(arg) == data[static_cast<std::size_t>(i)].label;
  }
  return {std::move(model), static_cast<double>(hits) / static_cast<double>(n), false};
}

}  // namespace cns

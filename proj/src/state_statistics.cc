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

#include "cns/state_statistics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cns/errors.h"
#include "cns/parallel.h"

namespace cns {
namespace {

void CheckDim(std::size_t d) {
  if (d < 2) throw DimensionError("Hilbert dimension must be >= 2");
}

double Clip01(double x) { return std::clamp(x, 0.0, 1.0); }

// log(2v^2 - v^4) = log(1 - (1 - v^2)^2), accurate near v = 1.
double LogBuresBase(double v) {
  double u = 1.0 - v * v;
  return std::log1p(-u * u);
}

}  // namespace

DistanceCdfModel::DistanceCdfModel(CdfVariant variant, std::size_t hilbert_dimension)
    : variant_(variant), dimension_(hilbert_dimension) {
  CheckDim(hilbert_dimension);
}

double FidelityPure(const DenseState& psi, const DenseState& phi) {
  return BornProbability(psi, phi);
}

CMatrix MatrixSqrt(const DensityMatrix& rho, SqrtMethod method) {
  const CMatrix& m = rho.matrix();
  if (method == SqrtMethod::kEigen) {
    // Eigenvalues at roundoff level are zeros; their roots (~1e-8) are not.
    double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                   std::max(1.0, HermitianEigenvalues(m).cwiseAbs().maxCoeff());
    return HermitianFunction(m, [floor](double l) { return l > floor ? std::sqrt(l) : 0.0; });
  }
  auto n = m.rows();
  CMatrix x = CMatrix::Identity(n, n) - m;
  RVector ev = HermitianEigenvalues(x);
  double r = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  if (!(r < 1.0)) {
    throw MethodInapplicableError(
        "MatrixSqrt(series): spectral radius of I - rho is >= 1");
  }
  // sqrt(I - X) = sum_k c_k (-X)^k, c_k = binom(1/2, k).
  CMatrix sum = CMatrix::Identity(n, n);
  CMatrix power = CMatrix::Identity(n, n);
  double c = 1.0;
  double rk = 1.0;
  constexpr int kMaxTerms = 2000000;
  for (int k = 1; k <= kMaxTerms; ++k) {
    c *= (0.5 - (k - 1)) / k;
    power = power * (-x);
    rk *= r;
    sum += c * power;
    double next = std::abs(c * (0.5 - k) / (k + 1)) * rk * r;
    if (next / (1.0 - r) < 1e-12) break;
  }
  return sum;
}

double FidelityMixed(const DensityMatrix& rho, const DensityMatrix& sigma,
                     SqrtMethod method) {
  if (rho.dimension() != sigma.dimension()) {
    throw DimensionError("FidelityMixed: dimensions differ");
  }
  // tr sqrt(sqrt(rho) sigma sqrt(rho)) is the trace norm of sqrt(rho) sqrt(sigma).
  CMatrix a = MatrixSqrt(rho, method) * MatrixSqrt(sigma);
  Eigen::JacobiSVD<CMatrix> svd(a);
  double tr = svd.singularValues().sum();
  return Clip01(tr * tr);
}

double BuresFromFidelity(double fidelity) {
  return std::sqrt(std::max(0.0, 1.0 - std::sqrt(Clip01(fidelity))));
}

double BuresNormalized(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return BuresFromFidelity(FidelityMixed(rho, sigma));
}

double FidelityCdf(double y, std::size_t dimension, CdfVariant variant) {
  CheckDim(dimension);
  y = Clip01(y);
  double k = static_cast<double>(dimension - 1);
  double tail = std::pow(1.0 - y, k);
  if (variant == CdfVariant::kCorrected) return 1.0 - tail;
  return tail / k;
}

double LogProbability::Value() const { return std::exp(log_value); }
double LogProbability::Log10() const { return log_value / std::log(10.0); }

LogProbability PrintedBuresTail(double v, std::size_t dimension) {
  CheckDim(dimension);
  double k = static_cast<double>(dimension - 1);
  return {k * LogBuresBase(Clip01(v)) - std::log(k)};
}

LogProbability CorrectedBuresBelow(double v, std::size_t dimension) {
  CheckDim(dimension);
  double k = static_cast<double>(dimension - 1);
  return {k * LogBuresBase(Clip01(v))};
}

double BuresCdf(double v, const DistanceCdfModel& model) {
  v = Clip01(v);
  if (model.variant() == CdfVariant::kCorrected) {
    return CorrectedBuresBelow(v, model.dimension()).Value();
  }
  return 1.0 - PrintedBuresTail(v, model.dimension()).Value();
}

double MeanBuresApprox(std::size_t dimension) {
  CheckDim(dimension);
  return std::sqrt(1.0 - 1.0 / std::sqrt(static_cast<double>(dimension)));
}

DenseState SampleRandomPure(std::size_t dimension, CounterRng& rng) {
  if (dimension < 1) throw DimensionError("SampleRandomPure: dimension must be >= 1");
  CVector v(static_cast<Eigen::Index>(dimension));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = ComplexNormal(rng);
  return DenseState(std::move(v));
}

DensityMatrix SampleRandomDensity(std::size_t dimension, std::size_t rank,
                                  CounterRng& rng) {
  if (rank < 1) throw DimensionError("SampleRandomDensity: rank must be >= 1");
  auto d = static_cast<Eigen::Index>(dimension);
  auto r = static_cast<Eigen::Index>(rank);
  CMatrix g(d, r);
  for (Eigen::Index c = 0; c < r; ++c)
    for (Eigen::Index i = 0; i < d; ++i) g(i, c) = ComplexNormal(rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(rho));
}

std::vector<double> SamplePairFidelities(std::size_t dimension, std::size_t samples,
                                         std::uint64_t seed, const CMatrix* unitary) {
  CheckDim(dimension);
  std::vector<double> out(samples);
  std::size_t chunks = ChunkCount(samples);
  auto d = static_cast<Eigen::Index>(dimension);
  ParallelFor(chunks, [&](std::size_t c) {
    Chunk ch = ChunkAt(samples, c);
    CounterRng rng = MakeStream(seed, "haar-pair", c);
    CVector a(d), b(d);
    for (std::size_t s = ch.begin; s < ch.end; ++s) {
      for (Eigen::Index i = 0; i < d; ++i) a(i) = ComplexNormal(rng);
      for (Eigen::Index i = 0; i < d; ++i) b(i) = ComplexNormal(rng);
      if (unitary != nullptr) {
        a = (*unitary) * a;
        b = (*unitary) * b;
      }
      double f = std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
      out[s] = Clip01(f);
    }
  });
  return out;
}

McEstimate MeanEstimate(const std::vector<double>& values, std::uint64_t seed) {
  McEstimate e;
  e.samples = values.size();
  e.seed = seed;
  if (values.empty()) return e;
  double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  e.value = mean;
  e.standard_error = values.size() > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
  return e;
}

McEstimate FractionBelow(const std::vector<double>& values, double threshold,
                         std::uint64_t seed) {
  McEstimate e;
  e.samples = values.size();
  e.seed = seed;
  if (values.empty()) return e;
  std::size_t hits = 0;
  for (double v : values) hits += v < threshold;
  double n = static_cast<double>(values.size());
  double p = static_cast<double>(hits) / n;
  e.value = p;
  e.standard_error = std::sqrt(p * (1 - p) / n);
  return e;
}

double CdfSupDeviation(std::vector<double> values,
                       const std::function<double(double)>& cdf) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  double n = static_cast<double>(values.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double f = cdf(values[i]);
    sup = std::max(sup, std::abs(static_cast<double>(i + 1) / n - f));
    sup = std::max(sup, std::abs(f - static_cast<double>(i) / n));
  }
  return sup;
}

}  // namespace cns

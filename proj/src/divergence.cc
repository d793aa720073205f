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

#include "cns/divergence.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cns/errors.h"

namespace cns {
namespace {

constexpr double kEntropyClip = 1e-14;

double Log(double x, LogBase base) {
  return base == LogBase::kTwo ? std::log2(x) : std::log(x);
}

double XLogX(double x, LogBase base) { return x > 0.0 ? x * Log(x, base) : 0.0; }

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ValidationError("ProbabilityVector: empty");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ValidationError("ProbabilityVector: negative or non-finite entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kTolerance) {
    throw ValidationError("ProbabilityVector: entries sum to " + std::to_string(sum));
  }
}

double ShannonEntropy(const ProbabilityVector& p, LogBase base) {
  double h = 0.0;
  for (double x : p.values()) h -= XLogX(x, base);
  return h;
}

double JsdClassical(const ProbabilityVector& p, const ProbabilityVector& q, LogBase base) {
  if (p.size() != q.size()) throw DimensionError("JsdClassical: lengths differ");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) d += 0.5 * p[i] * Log(p[i] / m, base);
    if (q[i] > 0.0) d += 0.5 * q[i] * Log(q[i] / m, base);
  }
  double cap = base == LogBase::kTwo ? 1.0 : std::numbers::ln2;
  return std::sqrt(std::clamp(d, 0.0, cap));
}

double VonNeumannEntropy(const CMatrix& rho, LogBase base) {
  RVector lam = HermitianEigenvalues(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > kEntropyClip) s -= XLogX(lam(i), base);
  }
  return s;
}

double Qjsd(const DensityMatrix& rho, const DensityMatrix& sigma, LogBase base) {
  if (rho.dimension() != sigma.dimension()) throw DimensionError("Qjsd: dimensions differ");
  CMatrix tau = 0.5 * (rho.matrix() + sigma.matrix());
  double d = VonNeumannEntropy(tau, base) - 0.5 * VonNeumannEntropy(rho.matrix(), base) -
             0.5 * VonNeumannEntropy(sigma.matrix(), base);
  double cap = base == LogBase::kTwo ? 1.0 : std::numbers::ln2;
  return std::sqrt(std::clamp(d, 0.0, cap));
}

PureReductionReport QjsdPureReduction(const ProbabilityVector& p,
                                      const ProbabilityVector& q, LogBase base) {
  if (p.size() != q.size()) throw DimensionError("QjsdPureReduction: lengths differ");
  auto d = static_cast<Eigen::Index>(p.size());
  CVector a(d), b(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    a(i) = std::sqrt(p[i]);
    b(i) = std::sqrt(q[i]);
  }
  DensityMatrix rho = DensityMatrix::FromPure(DenseState(a));
  DensityMatrix sigma = DensityMatrix::FromPure(DenseState(b));
  return {JsdClassical(p, q, base), Qjsd(rho, sigma, base)};
}

double RogaBound(double bures, LogBase base) {
  double b = std::clamp(bures, 0.0, 1.0);
  double x = 0.5 * b * b;
  double h = -XLogX(x, base) - XLogX(1.0 - x, base);
  return std::sqrt(std::max(0.0, h));
}

}  // namespace cns

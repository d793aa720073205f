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

#include "cns/neural_divergence.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "cns/errors.h"

namespace cns {
namespace {

// log2(2a / (a + b)) given d = ln b - ln a.
double HalfTerm(double d) {
  if (d == 0.0) return 0.0;
  if (d == -std::numeric_limits<double>::infinity()) return 1.0;
  double softplus = d > 0.0 ? d + std::log1p(std::exp(-d)) : std::log1p(std::exp(d));
  return 1.0 - softplus / std::numbers::ln2;
}

double Finish(double divergence) { return std::sqrt(std::clamp(divergence, 0.0, 1.0)); }

double GaussianJsd(const VectorDistribution& p, const VectorDistribution& q,
                   const JsdEstimateConfig& config) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < p.mean().size(); ++i) {
    bool zp = p.scale()(i) == 0.0, zq = q.scale()(i) == 0.0;
    if (zp && zq) {
      if (p.mean()(i) != q.mean()(i)) return 1.0;
      continue;
    }
    if (zp || zq) return 1.0;
    keep.push_back(i);
  }
  if (keep.empty()) return 0.0;
  auto m = static_cast<Eigen::Index>(keep.size());
  RVector mp(m), sp(m), mq(m), sq(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    mp(j) = p.mean()(keep[j]);
    sp(j) = p.scale()(keep[j]);
    mq(j) = q.mean()(keep[j]);
    sq(j) = q.scale()(keep[j]);
  }
  VectorDistribution rp = VectorDistribution::Gaussian(mp, sp);
  VectorDistribution rq = VectorDistribution::Gaussian(mq, sq);
  if (rp == rq) return 0.0;
  RMatrix xp = SampleMatrix(rp, config.samples, config.seed);
  RMatrix xq = SampleMatrix(rq, config.samples, config.seed);
  double acc_p = 0.0, acc_q = 0.0;
  for (Eigen::Index s = 0; s < xp.cols(); ++s) {
    RVector a = xp.col(s), b = xq.col(s);
    acc_p += HalfTerm(rq.LogDensity(a) - rp.LogDensity(a));
    acc_q += HalfTerm(rp.LogDensity(b) - rq.LogDensity(b));
  }
  double n = static_cast<double>(config.samples);
  return Finish(0.5 * acc_p / n + 0.5 * acc_q / n);
}

std::vector<RVector> PointSet(const VectorDistribution& d, std::size_t samples,
                              std::uint64_t seed) {
  if (d.kind() == VectorDistribution::Kind::kEmpirical) return d.samples();
  RMatrix xs = SampleMatrix(d, samples, seed);
  std::vector<RVector> out;
  out.reserve(samples);
  for (Eigen::Index s = 0; s < xs.cols(); ++s) out.push_back(xs.col(s));
  return out;
}

// Distance to the k-th nearest neighbour of x in `set`, skipping index `self`.
double KthDistance(const RVector& x, const std::vector<RVector>& set, std::size_t k,
                   std::size_t self) {
  std::vector<double> d;
  d.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i != self) d.push_back((set[i] - x).squaredNorm());
  }
  std::size_t kk = std::min(k, d.size()) - 1;
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(kk), d.end());
  return std::max(std::sqrt(d[kk]), 1e-12);
}

double KnnJsd(const VectorDistribution& p, const VectorDistribution& q,
              const JsdEstimateConfig& config) {
  std::vector<RVector> a = PointSet(p, config.samples, config.seed);
  std::vector<RVector> b = PointSet(q, config.samples, config.seed ^ 0x5bd1e995ULL);
  if (a.size() < 2 || b.size() < 2) {
    throw ConfigurationError("JsdEstimate: kNN proxy needs at least 2 points per side");
  }
  double m = static_cast<double>(p.dimension());
  std::size_t k = std::max<std::size_t>(1, config.k_neighbors);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  // d = ln q(x) - ln p(x) from k-th neighbour radii.
  auto side = [&](const std::vector<RVector>& own, const std::vector<RVector>& other) {
    double acc = 0.0;
    double log_ratio = std::log(static_cast<double>(own.size() - 1)) -
                       std::log(static_cast<double>(other.size()));
    for (std::size_t i = 0; i < own.size(); ++i) {
      double r_own = KthDistance(own[i], own, k, i);
      double r_other = KthDistance(own[i], other, k, kNone);
      double d = log_ratio + m * (std::log(r_own) - std::log(r_other));
      acc += HalfTerm(d);
    }
    return acc / static_cast<double>(own.size());
  };
  return Finish(0.5 * side(a, b) + 0.5 * side(b, a));
}

}  // namespace

double JsdEstimate(const VectorDistribution& p, const VectorDistribution& q,
                   const JsdEstimateConfig& config) {
  if (config.samples < 100) {
    throw ConfigurationError("JsdEstimate: sample count must be >= 100");
  }
  if (p.dimension() != q.dimension()) throw DimensionError("JsdEstimate: dimensions differ");
  using Kind = VectorDistribution::Kind;
  if (p.kind() == Kind::kGaussianDiagonal && q.kind() == Kind::kGaussianDiagonal) {
    return GaussianJsd(p, q, config);
  }
  return KnnJsd(p, q, config);
}

}  // namespace cns

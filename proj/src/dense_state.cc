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

#include "cns/dense_state.h"

#include <cmath>
#include <string>

#include "cns/errors.h"

namespace cns {
namespace {

std::size_t Log2Exact(std::size_t d) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < d) ++n;
  return n;
}

std::size_t ShiftIndex(std::size_t index, std::size_t n, std::size_t shift) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t bit = (index >> (n - 1 - i)) & 1u;
    std::size_t target = (i + shift) % n;
    out |= bit << (n - 1 - target);
  }
  return out;
}

std::size_t NormalizeShift(long long j, std::size_t n) {
  long long nn = static_cast<long long>(n);
  return static_cast<std::size_t>(((j % nn) + nn) % nn);
}

}  // namespace

std::size_t CogitsToDimension(std::size_t n_cogits) {
  if (n_cogits > 62) throw DimensionError("CogitsToDimension: more than 62 cogits");
  return std::size_t{1} << n_cogits;
}

DenseState::DenseState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("DenseState: empty amplitude vector");
  double norm = amplitudes_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DegenerateError("DenseState: zero or non-finite norm");
  }
  amplitudes_ /= norm;
}

DenseState DenseState::FromProduct(const CogitHypervector& x) {
  if (x.size() > kMaxDenseCogits) {
    throw DimensionError("DenseState::FromProduct: more than 14 cogits");
  }
  CVector v = CVector::Ones(1);
  for (const auto& c : x.cogits()) {
    CVector next(v.size() * 2);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      next(2 * k) = v(k) * c.alpha();
      next(2 * k + 1) = v(k) * c.beta();
    }
    v = std::move(next);
  }
  return DenseState(std::move(v));
}

DenseState DenseState::Basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("DenseState::Basis: index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return DenseState(std::move(v));
}

std::optional<std::size_t> DenseState::CogitCount() const {
  std::size_t d = dimension();
  if ((d & (d - 1)) != 0) return std::nullopt;
  return Log2Exact(d);
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw ValidationError("DensityMatrix: matrix must be square and non-empty");
  }
  double herm = HermitianDeviation(entries_);
  if (herm > kTolerance) {
    throw ValidationError("DensityMatrix: not Hermitian (deviation " +
                          std::to_string(herm) + ")");
  }
  double tr = entries_.trace().real();
  if (std::abs(tr - 1.0) > kTolerance) {
    throw ValidationError("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  double min_eig = HermitianEigenvalues(entries_)(0);
  if (min_eig < -kTolerance) {
    throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::FromPure(const DenseState& psi) {
  const CVector& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::FromDiagonal(std::span<const double> probs) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(probs.size()),
                            static_cast<Eigen::Index>(probs.size()));
  for (std::size_t i = 0; i < probs.size(); ++i) m(i, i) = probs[i];
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::MaximallyMixed(std::size_t dim) {
  auto d = static_cast<Eigen::Index>(dim);
  return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(dim));
}

std::vector<double> DensityMatrix::DiagonalProbabilities() const {
  std::vector<double> p(dimension());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::max(0.0, entries_(i, i).real());
  return p;
}

UnitaryOperator::UnitaryOperator(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw ValidationError("UnitaryOperator: matrix must be square and non-empty");
  }
  CMatrix gram = entries_.adjoint() * entries_;
  gram -= CMatrix::Identity(entries_.rows(), entries_.cols());
  double dev = MaxAbsEntry(gram);
  if (!(dev <= kTolerance)) {
    throw ValidationError("UnitaryOperator: not unitary (deviation " +
                          std::to_string(dev) + ")");
  }
}

UnitaryOperator UnitaryOperator::Identity(std::size_t dim) {
  auto d = static_cast<Eigen::Index>(dim);
  return UnitaryOperator(CMatrix::Identity(d, d));
}

UnitaryOperator UnitaryOperator::Random(std::size_t dim, CounterRng& rng) {
  return UnitaryOperator(RandomUnitaryMatrix(static_cast<int>(dim), rng));
}

UnitaryOperator UnitaryOperator::Adjoint() const {
  return UnitaryOperator(entries_.adjoint());
}

double BornProbability(const DenseState& psi, const DenseState& a) {
  if (psi.dimension() != a.dimension()) {
    throw DimensionError("BornProbability: dimensions differ");
  }
  return std::min(1.0, std::norm(a.amplitudes().dot(psi.amplitudes())));
}

DenseState ApplyDynamics(const UnitaryOperator& h, const DenseState& psi) {
  if (h.dimension() != psi.dimension()) {
    throw DimensionError("ApplyDynamics: operator and state dimensions differ");
  }
  return DenseState(h.matrix() * psi.amplitudes());
}

DenseState PermuteDense(const DenseState& psi, long long j) {
  auto n = psi.CogitCount();
  if (!n) throw DimensionError("PermuteDense: dimension is not a power of two");
  if (*n == 0) return psi;
  std::size_t shift = NormalizeShift(j, *n);
  const CVector& a = psi.amplitudes();
  CVector out(a.size());
  for (std::size_t k = 0; k < psi.dimension(); ++k) out(ShiftIndex(k, *n, shift)) = a(k);
  return DenseState(std::move(out));
}

CMatrix CogitShiftMatrix(std::size_t n_cogits, long long j) {
  std::size_t d = CogitsToDimension(n_cogits);
  auto dd = static_cast<Eigen::Index>(d);
  CMatrix p = CMatrix::Zero(dd, dd);
  std::size_t shift = n_cogits == 0 ? 0 : NormalizeShift(j, n_cogits);
  for (std::size_t k = 0; k < d; ++k) {
    p(static_cast<Eigen::Index>(n_cogits == 0 ? k : ShiftIndex(k, n_cogits, shift)),
      static_cast<Eigen::Index>(k)) = 1.0;
  }
  return p;
}

UnitaryOperator PermuteOperator(const UnitaryOperator& h, long long j,
                                std::size_t n_cogits) {
  if (n_cogits > kMaxDenseCogits || CogitsToDimension(n_cogits) != h.dimension()) {
    throw DimensionError("PermuteOperator: operator dimension is not 2^N");
  }
  CMatrix p = CogitShiftMatrix(n_cogits, j);
  return UnitaryOperator(p * h.matrix() * p.adjoint());
}

std::size_t SampleOutcome(const DenseState& psi, CounterRng& rng) {
  double u = rng.Uniform();
  double acc = 0.0;
  const CVector& a = psi.amplitudes();
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    acc += std::norm(a(k));
    if (u < acc) return static_cast<std::size_t>(k);
  }
  // Rounding left u above the accumulated mass; pick the last nonzero entry.
  for (Eigen::Index k = a.size() - 1; k >= 0; --k) {
    if (std::norm(a(k)) > 0.0) return static_cast<std::size_t>(k);
  }
  return 0;
}

}  // namespace cns

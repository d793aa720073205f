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

#ifndef CNS_DENSE_STATE_H_
#define CNS_DENSE_STATE_H_

#include <cstddef>
#include <optional>
#include <span>

#include "cns/cogit.h"
#include "cns/linalg.h"
#include "cns/random.h"

namespace cns {

// Dense tensor-product states stop at 14 cogits (D = 16384).
inline constexpr std::size_t kMaxDenseCogits = 14;

// 2^n. Throws DimensionError for n > 62.
std::size_t CogitsToDimension(std::size_t n_cogits);

// Unit vector in C^D. Basis index bits run with cogit 0 most significant.
class DenseState {
 public:
  // Normalizes. Throws DegenerateError on zero norm, DimensionError if empty.
  explicit DenseState(CVector amplitudes);

  static DenseState FromProduct(const CogitHypervector& x);
  static DenseState Basis(std::size_t dim, std::size_t index);

  const CVector& amplitudes() const { return amplitudes_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  // Number of cogits if D is a power of two.
  std::optional<std::size_t> CogitCount() const;

 private:
  CVector amplitudes_;
};

// Hermitian, unit-trace, positive semidefinite (all within 1e-10).
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  // Validates; throws ValidationError naming the violated invariant.
  explicit DensityMatrix(CMatrix entries);

  static DensityMatrix FromPure(const DenseState& psi);
  static DensityMatrix FromDiagonal(std::span<const double> probs);
  static DensityMatrix MaximallyMixed(std::size_t dim);

  const CMatrix& matrix() const { return entries_; }
  std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }
  // Real diagonal, clipped at zero.
  std::vector<double> DiagonalProbabilities() const;

 private:
  CMatrix entries_;
};

// Square matrix with ||U^dagger U - I||_max <= 1e-8.
class UnitaryOperator {
 public:
  static constexpr double kTolerance = 1e-8;

  explicit UnitaryOperator(CMatrix entries);

  static UnitaryOperator Identity(std::size_t dim);
  static UnitaryOperator Random(std::size_t dim, CounterRng& rng);

  UnitaryOperator Adjoint() const;
  const CMatrix& matrix() const { return entries_; }
  std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }

 private:
  CMatrix entries_;
};

// |<a|psi>|^2.
double BornProbability(const DenseState& psi, const DenseState& a);

// H psi.
DenseState ApplyDynamics(const UnitaryOperator& h, const DenseState& psi);

// Moves cogit i to (i + j) mod N in the tensor order.
DenseState PermuteDense(const DenseState& psi, long long j);

// Basis permutation matrix of the cyclic cogit shift.
CMatrix CogitShiftMatrix(std::size_t n_cogits, long long j);

// P H P^dagger for the cyclic shift by j on N cogits.
UnitaryOperator PermuteOperator(const UnitaryOperator& h, long long j,
                                std::size_t n_cogits);

// Basis index drawn with probability |psi_k|^2.
std::size_t SampleOutcome(const DenseState& psi, CounterRng& rng);

}  // namespace cns

#endif  // CNS_DENSE_STATE_H_

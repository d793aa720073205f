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

#ifndef CNS_STATE_STATISTICS_H_
#define CNS_STATE_STATISTICS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cns/dense_state.h"
#include "cns/linalg.h"
#include "cns/random.h"

namespace cns {

// kPrinted reproduces the formula as published, kCorrected is the
// change-of-variables law of the Beta(1, D-1) fidelity.
enum class CdfVariant { kPrinted, kCorrected };

class DistanceCdfModel {
 public:
  DistanceCdfModel(CdfVariant variant, std::size_t hilbert_dimension);
  CdfVariant variant() const { return variant_; }
  std::size_t dimension() const { return dimension_; }

 private:
  CdfVariant variant_;
  std::size_t dimension_;
};

struct McEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// |<psi|phi>|^2.
double FidelityPure(const DenseState& psi, const DenseState& phi);

enum class SqrtMethod { kEigen, kSeries };

// Principal square root. kSeries sums the binomial series of
// sqrt(I - (I - rho)) until the tail bound |c_{N+1}| r^{N+1} / (1 - r) drops
// below 1e-12, r the spectral radius of I - rho. Requires r < 1, so only
// full-rank inputs qualify; otherwise throws MethodInapplicableError.
CMatrix MatrixSqrt(const DensityMatrix& rho, SqrtMethod method = SqrtMethod::kEigen);

// (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clipped to [0, 1].
double FidelityMixed(const DensityMatrix& rho, const DensityMatrix& sigma,
                     SqrtMethod method = SqrtMethod::kEigen);

// sqrt(1 - sqrt(F)).
double BuresFromFidelity(double fidelity);
double BuresNormalized(const DensityMatrix& rho, const DensityMatrix& sigma);

// Corrected: 1 - (1-y)^(D-1). Printed: (1-y)^(D-1) / (D-1).
double FidelityCdf(double y, std::size_t dimension, CdfVariant variant);

// Corrected: (2v^2 - v^4)^(D-1). Printed: 1 - (2v^2 - v^4)^(D-1) / (D-1).
double BuresCdf(double v, const DistanceCdfModel& model);

// A probability kept in log space so tiny values survive.
struct LogProbability {
  double log_value;  // natural log
  double Value() const;
  double Log10() const;
};

// The printed tail (2v^2 - v^4)^(D-1) / (D-1) in log space.
LogProbability PrintedBuresTail(double v, std::size_t dimension);
// The corrected Pr[b < v] in log space.
LogProbability CorrectedBuresBelow(double v, std::size_t dimension);

// sqrt(1 - D^{-1/2}).
double MeanBuresApprox(std::size_t dimension);

// Haar-uniform unit vector: normalized isotropic complex Gaussian.
DenseState SampleRandomPure(std::size_t dimension, CounterRng& rng);

// Random mixed state: partial trace of a Haar pure state on D x rank.
DensityMatrix SampleRandomDensity(std::size_t dimension, std::size_t rank,
                                  CounterRng& rng);

// Fidelities of independent Haar pairs. Work is chunked into fixed tasks
// keyed by (seed, "haar-pair", chunk), so output is thread-count invariant.
// If `unitary` is given it is applied to both states of every pair.
std::vector<double> SamplePairFidelities(std::size_t dimension, std::size_t samples,
                                         std::uint64_t seed,
                                         const CMatrix* unitary = nullptr);

McEstimate MeanEstimate(const std::vector<double>& values, std::uint64_t seed);
// Fraction of values strictly below `threshold`, with binomial standard error.
McEstimate FractionBelow(const std::vector<double>& values, double threshold,
                         std::uint64_t seed);

// sup_y |F_empirical(y) - cdf(y)|, evaluated at both sides of every jump.
double CdfSupDeviation(std::vector<double> values,
                       const std::function<double(double)>& cdf);

}  // namespace cns

#endif  // CNS_STATE_STATISTICS_H_

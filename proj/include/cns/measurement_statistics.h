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

#ifndef CNS_MEASUREMENT_STATISTICS_H_
#define CNS_MEASUREMENT_STATISTICS_H_

#include <cstddef>
#include <vector>

#include "cns/state_statistics.h"

namespace cns {

// n cogits, each with true Pr[1] = p, read through a symmetric flip of rate q.
class NoisyMeasurementModel {
 public:
  NoisyMeasurementModel(std::size_t n, double p, double q);
  std::size_t n() const { return n_; }
  double p() const { return p_; }
  double q() const { return q_; }
  // Per-cogit Pr[observed 1] = p + q - 2pq.
  double Rate() const { return p_ + q_ - 2.0 * p_ * q_; }

 private:
  std::size_t n_;
  double p_;
  double q_;
};

// (1-q) p^x (1-p)^(1-x) + q (1-p)^x p^(1-x) for x in {0, 1}.
double MixturePmf(int x, double p, double q);

struct Moments {
  double mean;
  double variance;
};

// mean n r, variance n r (1 - r), r = p + q - 2pq.
Moments EffectiveFlipMoments(const NoisyMeasurementModel& model);

// 1/2 erfc((z - mean) / sqrt(2 variance)); a step at the mean if variance = 0.
double GaussianUpperTail(double z, double mean, double variance);

// Gaussian approximation of Pr[Z >= z].
double SimilarityTail(double z, const NoisyMeasurementModel& model);

// The printed expression 1/2 - (1/sqrt 2) erf((z - mean) / sqrt(2 variance)).
double PrintedSimilarityTail(double z, const NoisyMeasurementModel& model);

// log Binomial(n, r) pmf at k; -inf off the support.
double LogBinomialPmf(std::size_t k, std::size_t n, double r);
// Pr[K >= k] and Pr[K <= k], summed in log space with compensation.
LogProbability BinomialUpperTail(std::size_t k, std::size_t n, double r);
LogProbability BinomialLowerTail(std::size_t k, std::size_t n, double r);

// Exact Pr[Z >= k] with Z ~ Binomial(n, p + q - 2pq).
LogProbability ExactSimilarityTail(std::size_t k, const NoisyMeasurementModel& model);

// Pmf of the observed-ones count built by explicit convolution over the
// true-ones count: sum_j Bin(j; n, p) [Bin(.; j, 1-q) * Bin(.; n-j, q)].
// O(n^3); an oracle for small n.
std::vector<double> ConvolvedCountPmf(const NoisyMeasurementModel& model);

// Sum over k = 0..n of the printed compound Pr[k] = sum_{j<=k} f(j)^n, f the
// mixture pmf on {0, 1} (zero elsewhere). Not 1 in general.
double PrintedCompoundMass(const NoisyMeasurementModel& model);

// Similarity count between the true and noisy readout of one state:
// Gaussian with mean n(1-q), variance nq(1-q).
double TrueVsNoisyTail(double z, std::size_t n, double q);
// Exact Pr[similarity count >= k] = Pr[Binomial(n, 1-q) >= k].
LogProbability ExactTrueVsNoisyTail(std::size_t k, std::size_t n, double q);

// max_k |GaussianUpperTail - exact Pr[K >= k]| over k = 0..n for K ~ Bin(n, r).
// With continuity correction the Gaussian is evaluated at k - 1/2.
double MaxGaussianTailError(std::size_t n, double r, bool continuity_correction);

enum class PairLaw {
  kRandomPair,  // distance ~ Binomial(n, 1/2) whatever q is
  kTrueVsNoisy, // distance ~ Binomial(n, q)
};

struct ConcentrationCase {
  PairLaw law;
  double q;
};

struct ConcentrationInterval {
  std::size_t n = 0;
  PairLaw law = PairLaw::kRandomPair;
  double q = 0.0;
  double mass = 0.0;
  std::size_t lo_count = 0;
  std::size_t hi_count = 0;
  double lo = 0.0;  // lo_count / n
  double hi = 0.0;
  LogProbability outside{0.0};  // Pr[K < lo_count] + Pr[K > hi_count]
};

// Pr[K < lo] + Pr[K > hi] for K ~ Binomial(n, r).
LogProbability OutsideMass(std::size_t n, double r, std::size_t lo, std::size_t hi);

// Tightest interval [mu - h, mu + h] (integer endpoints) with mass >= `mass`.
ConcentrationInterval TightestSymmetricInterval(std::size_t n, double rate, double mass);

std::vector<ConcentrationInterval> ConcentrationTable(
    const std::vector<std::size_t>& n_list, const std::vector<ConcentrationCase>& cases,
    const std::vector<double>& masses);

}  // namespace cns

#endif  // CNS_MEASUREMENT_STATISTICS_H_

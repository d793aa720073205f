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

#ifndef CNS_COGIT_H_
#define CNS_COGIT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cns/linalg.h"
#include "cns/random.h"

namespace cns {

// How a renormalization of a zero-norm cogit is handled.
enum class DegeneratePolicy {
  kResolveAndFlag,  // replace with |0> and report the index
  kThrow,           // raise DegenerateError
};

// Normalized two-level state alpha|0> + beta|1>. The global phase is fixed
// so that alpha is real and nonnegative (beta real and positive if alpha = 0).
class Cogit {
 public:
  Cogit() : alpha_(1.0), beta_(0.0) {}
  // Normalizes and fixes the global phase. Throws DegenerateError on zero norm.
  Cogit(Complex alpha, Complex beta);

  static Cogit FromBloch(double theta, double phi);
  static Cogit Zero() { return Cogit(); }
  static Cogit One() { return Cogit(0.0, 1.0); }
  static Cogit Plus() { return Cogit(1.0, 1.0); }
  // Haar-random point on the Bloch sphere.
  static Cogit Random(CounterRng& rng);

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  double ProbOne() const { return std::norm(beta_); }
  double Theta() const;
  // Relative phase arg(beta) in (-pi, pi]; 0 at the poles.
  double Phi() const;

  bool operator==(const Cogit&) const = default;

 private:
  Complex alpha_;
  Complex beta_;
};

// |<a|b>|^2.
double Fidelity(const Cogit& a, const Cogit& b);

// Ordered, immutable sequence of n >= 1 cogits.
class CogitHypervector {
 public:
  explicit CogitHypervector(std::vector<Cogit> cogits);

  static CogitHypervector Random(std::size_t n, CounterRng& rng);
  static CogitHypervector Filled(std::size_t n, const Cogit& c);
  // |+> in every slot. Identity element of Bind.
  static CogitHypervector BindIdentity(std::size_t n) { return Filled(n, Cogit::Plus()); }
  // Equator states e^{i phase_k} relative phase.
  static CogitHypervector FromPhases(std::span<const double> phases);

  std::size_t size() const { return cogits_.size(); }
  const Cogit& operator[](std::size_t i) const { return cogits_[i]; }
  const std::vector<Cogit>& cogits() const { return cogits_; }

  bool operator==(const CogitHypervector&) const = default;

 private:
  std::vector<Cogit> cogits_;
};

// Result plus indices of cogits that renormalized from zero.
struct AlgebraResult {
  CogitHypervector value;
  std::vector<std::size_t> degenerate;
};

// Per-cogit amplitude sum, renormalized.
AlgebraResult BundleWithReport(std::span<const CogitHypervector> inputs);
CogitHypervector Bundle(std::span<const CogitHypervector> inputs,
                        DegeneratePolicy policy = DegeneratePolicy::kResolveAndFlag);

// Per-cogit product of z = beta / alpha: (a1 a2, b1 b2), renormalized.
// Relative phases add; commutative, associative, identity |+>.
AlgebraResult BindWithReport(const CogitHypervector& x, const CogitHypervector& y);
CogitHypervector Bind(const CogitHypervector& x, const CogitHypervector& y,
                      DegeneratePolicy policy = DegeneratePolicy::kResolveAndFlag);

// Bind inverse: (|beta|, |alpha| e^{-i phi}). Conjugation on the equator.
CogitHypervector Inverse(const CogitHypervector& x);

// Bind(s, Inverse(x)).
CogitHypervector Unbind(const CogitHypervector& s, const CogitHypervector& x,
                        DegeneratePolicy policy = DegeneratePolicy::kResolveAndFlag);

// Cyclic shift: cogit i moves to (i + j) mod n.
CogitHypervector Permute(const CogitHypervector& x, long long j);

using BitVector = std::vector<std::uint8_t>;

// Independent Z-basis draws with Pr[1] = |beta|^2.
BitVector Measure(const CogitHypervector& x, CounterRng& rng);

// 1 - Hamming distance / n.
double HammingSimilarity(const BitVector& u, const BitVector& v);

// E[HammingSimilarity(Measure(x), Measure(y))] for independent draws.
double ExpectedHammingSimilarity(const CogitHypervector& x, const CogitHypervector& y);

// Measures each cogit of x in the basis {y_i, y_i^perp}; returns the
// fraction that land on y_i.
double ProjectiveSimilarity(const CogitHypervector& x, const CogitHypervector& y,
                            CounterRng& rng);

// Mean per-cogit fidelity, the expectation of ProjectiveSimilarity.
double ExpectedProjectiveSimilarity(const CogitHypervector& x,
                                    const CogitHypervector& y);

// Re<u, v> / (|u| |v|).
double CosineSimilarity(const CVector& u, const CVector& v);

}  // namespace cns

#endif  // CNS_COGIT_H_

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

#include "cns/cogit.h"

#include <cmath>
#include <numbers>
#include <string>

#include "cns/errors.h"

namespace cns {
namespace {

constexpr double kZeroNorm = 1e-12;

void CheckSameSize(const CogitHypervector& x, const CogitHypervector& y,
                   const char* op) {
  if (x.size() != y.size()) {
    throw DimensionError(std::string(op) + ": hypervector lengths " +
                         std::to_string(x.size()) + " and " +
                         std::to_string(y.size()) + " differ");
  }
}

// Renormalizes raw amplitudes, or resolves to |0> when the norm vanishes.
Cogit Resolve(Complex a, Complex b, std::size_t index,
              std::vector<std::size_t>& degenerate) {
  if (std::sqrt(std::norm(a) + std::norm(b)) < kZeroNorm) {
    degenerate.push_back(index);
    return Cogit::Zero();
  }
  return Cogit(a, b);
}

CogitHypervector Apply(AlgebraResult r, DegeneratePolicy policy, const char* op) {
  if (policy == DegeneratePolicy::kThrow && !r.degenerate.empty()) {
    throw DegenerateError(std::string(op) + ": zero-norm cogit at index " +
                          std::to_string(r.degenerate.front()));
  }
  return std::move(r.value);
}

}  // namespace

Cogit::Cogit(Complex alpha, Complex beta) {
  double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DegenerateError("Cogit: amplitudes have zero or non-finite norm");
  }
  alpha /= norm;
  beta /= norm;
  double a = std::abs(alpha);
  if (a > 0.0) {
    Complex phase = std::conj(alpha) / a;
    alpha_ = a;
    beta_ = beta * phase;
  } else {
    alpha_ = 0.0;
    beta_ = std::abs(beta);
  }
}

Cogit Cogit::FromBloch(double theta, double phi) {
  return Cogit(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
}

Cogit Cogit::Random(CounterRng& rng) {
  Complex a = ComplexNormal(rng);
  Complex b = ComplexNormal(rng);
  return Cogit(a, b);
}

double Cogit::Theta() const { return 2.0 * std::atan2(std::abs(beta_), alpha_.real()); }

double Cogit::Phi() const {
  if (std::abs(beta_) == 0.0 || alpha_.real() == 0.0) return 0.0;
  return std::arg(beta_);
}

double Fidelity(const Cogit& a, const Cogit& b) {
  Complex ip = std::conj(a.alpha()) * b.alpha() + std::conj(a.beta()) * b.beta();
  return std::min(1.0, std::norm(ip));
}

CogitHypervector::CogitHypervector(std::vector<Cogit> cogits)
    : cogits_(std::move(cogits)) {
  if (cogits_.empty()) throw DimensionError("CogitHypervector: n must be >= 1");
}

CogitHypervector CogitHypervector::Random(std::size_t n, CounterRng& rng) {
  std::vector<Cogit> c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(Cogit::Random(rng));
  return CogitHypervector(std::move(c));
}

CogitHypervector CogitHypervector::Filled(std::size_t n, const Cogit& c) {
  return CogitHypervector(std::vector<Cogit>(n, c));
}

CogitHypervector CogitHypervector::FromPhases(std::span<const double> phases) {
  std::vector<Cogit> c;
  c.reserve(phases.size());
  for (double p : phases) c.push_back(Cogit(1.0, std::polar(1.0, p)));
  return CogitHypervector(std::move(c));
}

AlgebraResult BundleWithReport(std::span<const CogitHypervector> inputs) {
  if (inputs.empty()) throw DimensionError("Bundle: empty input list");
  std::size_t n = inputs.front().size();
  for (const auto& x : inputs) CheckSameSize(inputs.front(), x, "Bundle");
  std::vector<Cogit> out;
  out.reserve(n);
  std::vector<std::size_t> degenerate;
  for (std::size_t i = 0; i < n; ++i) {
    Complex a = 0.0, b = 0.0;
    for (const auto& x : inputs) {
      a += x[i].alpha();
      b += x[i].beta();
    }
    out.push_back(Resolve(a, b, i, degenerate));
  }
  return {CogitHypervector(std::move(out)), std::move(degenerate)};
}

CogitHypervector Bundle(std::span<const CogitHypervector> inputs,
                        DegeneratePolicy policy) {
  return Apply(BundleWithReport(inputs), policy, "Bundle");
}

AlgebraResult BindWithReport(const CogitHypervector& x, const CogitHypervector& y) {
  CheckSameSize(x, y, "Bind");
  std::vector<Cogit> out;
  out.reserve(x.size());
  std::vector<std::size_t> degenerate;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.push_back(Resolve(x[i].alpha() * y[i].alpha(), x[i].beta() * y[i].beta(), i,
                          degenerate));
  }
  return {CogitHypervector(std::move(out)), std::move(degenerate)};
}

CogitHypervector Bind(const CogitHypervector& x, const CogitHypervector& y,
                      DegeneratePolicy policy) {
  return Apply(BindWithReport(x, y), policy, "Bind");
}

CogitHypervector Inverse(const CogitHypervector& x) {
  std::vector<Cogit> out;
  out.reserve(x.size());
  for (const auto& c : x.cogits()) {
    double a = c.alpha().real();
    double b = std::abs(c.beta());
    Complex unit = b > 0.0 ? std::conj(c.beta()) / b : Complex(1.0);
    out.push_back(Cogit(b, a * unit));
  }
  return CogitHypervector(std::move(out));
}

CogitHypervector Unbind(const CogitHypervector& s, const CogitHypervector& x,
                        DegeneratePolicy policy) {
  CheckSameSize(s, x, "Unbind");
  return Bind(s, Inverse(x), policy);
}

CogitHypervector Permute(const CogitHypervector& x, long long j) {
  long long n = static_cast<long long>(x.size());
  long long shift = ((j % n) + n) % n;
  std::vector<Cogit> out(x.size());
  for (long long i = 0; i < n; ++i) out[(i + shift) % n] = x[i];
  return CogitHypervector(std::move(out));
}

BitVector Measure(const CogitHypervector& x, CounterRng& rng) {
  BitVector bits(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) bits[i] = rng.Uniform() < x[i].ProbOne();
  return bits;
}

double HammingSimilarity(const BitVector& u, const BitVector& v) {
  if (u.size() != v.size() || u.empty()) {
    throw DimensionError("HammingSimilarity: lengths differ or are zero");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d += (u[i] != v[i]);
  return 1.0 - static_cast<double>(d) / static_cast<double>(u.size());
}

double ExpectedHammingSimilarity(const CogitHypervector& x, const CogitHypervector& y) {
  CheckSameSize(x, y, "ExpectedHammingSimilarity");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = x[i].ProbOne(), q = y[i].ProbOne();
    s += p * q + (1 - p) * (1 - q);
  }
  return s / static_cast<double>(x.size());
}

double ProjectiveSimilarity(const CogitHypervector& x, const CogitHypervector& y,
                            CounterRng& rng) {
  CheckSameSize(x, y, "ProjectiveSimilarity");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < x.size(); ++i) hits += rng.Uniform() < Fidelity(y[i], x[i]);
  return static_cast<double>(hits) / static_cast<double>(x.size());
}

double ExpectedProjectiveSimilarity(const CogitHypervector& x,
                                    const CogitHypervector& y) {
  CheckSameSize(x, y, "ExpectedProjectiveSimilarity");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += Fidelity(x[i], y[i]);
  return s / static_cast<double>(x.size());
}

double CosineSimilarity(const CVector& u, const CVector& v) {
  if (u.size() != v.size()) throw DimensionError("CosineSimilarity: lengths differ");
  double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw DegenerateError("CosineSimilarity: zero-norm input");
  return u.dot(v).real() / (nu * nv);
}

}  // namespace cns

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

#include "cns/measurement_statistics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cns/errors.h"

namespace cns {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void CheckProbability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ValidationError(std::string(name) + " must lie in [0, 1]");
  }
}

// log sum exp over terms, compensated.
double LogSumExp(const std::vector<double>& terms) {
  double m = kNegInf;
  for (double t : terms) m = std::max(m, t);
  if (m == kNegInf) return kNegInf;
  double sum = 0.0, comp = 0.0;
  for (double t : terms) {
    double y = std::exp(t - m) - comp;
    double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return m + std::log(sum);
}

LogProbability TailRange(std::size_t from, std::size_t to, std::size_t n, double r) {
  if (from > to) return {kNegInf};
  std::vector<double> terms;
  terms.reserve(to - from + 1);
  for (std::size_t k = from; k <= to; ++k) terms.push_back(LogBinomialPmf(k, n, r));
  return {std::min(0.0, LogSumExp(terms))};
}

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

std::vector<double> BinomialPmfVector(std::size_t n, double r) {
  std::vector<double> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out[k] = std::exp(LogBinomialPmf(k, n, r));
  return out;
}

}  // namespace

NoisyMeasurementModel::NoisyMeasurementModel(std::size_t n, double p, double q)
    : n_(n), p_(p), q_(q) {
  if (n < 1) throw ValidationError("NoisyMeasurementModel: n must be >= 1");
  CheckProbability(p, "p");
  CheckProbability(q, "q");
}

double MixturePmf(int x, double p, double q) {
  if (x != 0 && x != 1) throw ValidationError("MixturePmf: x must be 0 or 1");
  CheckProbability(p, "p");
  CheckProbability(q, "q");
  double bern = x == 1 ? p : 1.0 - p;
  double flip = x == 1 ? 1.0 - p : p;
  return (1.0 - q) * bern + q * flip;
}

Moments EffectiveFlipMoments(const NoisyMeasurementModel& model) {
  double n = static_cast<double>(model.n());
  double r = model.Rate();
  return {n * r, n * r * (1.0 - r)};
}

double GaussianUpperTail(double z, double mean, double variance) {
  if (variance <= 0.0) return z <= mean ? 1.0 : 0.0;
  return 0.5 * std::erfc((z - mean) / std::sqrt(2.0 * variance));
}

double SimilarityTail(double z, const NoisyMeasurementModel& model) {
  Moments m = EffectiveFlipMoments(model);
  return GaussianUpperTail(z, m.mean, m.variance);
}

double PrintedSimilarityTail(double z, const NoisyMeasurementModel& model) {
  Moments m = EffectiveFlipMoments(model);
  if (m.variance <= 0.0) return z <= m.mean ? 1.0 : 0.0;
  return 0.5 - std::erf((z - m.mean) / std::sqrt(2.0 * m.variance)) / std::numbers::sqrt2;
}

double LogBinomialPmf(std::size_t k, std::size_t n, double r) {
  if (k > n) return kNegInf;
  if (r <= 0.0) return k == 0 ? 0.0 : kNegInf;
  if (r >= 1.0) return k == n ? 0.0 : kNegInf;
  double nn = static_cast<double>(n), kk = static_cast<double>(k);
  double log_choose = std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1);
  return log_choose + kk * std::log(r) + (nn - kk) * std::log1p(-r);
}

LogProbability BinomialUpperTail(std::size_t k, std::size_t n, double r) {
  if (k == 0) return {0.0};
  return TailRange(k, n, n, r);
}

LogProbability BinomialLowerTail(std::size_t k, std::size_t n, double r) {
  if (k >= n) return {0.0};
  return TailRange(0, k, n, r);
}

LogProbability ExactSimilarityTail(std::size_t k, const NoisyMeasurementModel& model) {
  return BinomialUpperTail(k, model.n(), model.Rate());
}

std::vector<double> ConvolvedCountPmf(const NoisyMeasurementModel& model) {
  std::size_t n = model.n();
  std::vector<double> out(n + 1, 0.0);
  std::vector<double> truth = BinomialPmfVector(n, model.p());
  for (std::size_t j = 0; j <= n; ++j) {
    if (truth[j] == 0.0) continue;
    std::vector<double> kept = BinomialPmfVector(j, 1.0 - model.q());
    std::vector<double> flipped = BinomialPmfVector(n - j, model.q());
    for (std::size_t a = 0; a <= j; ++a)
      for (std::size_t b = 0; b <= n - j; ++b) out[a + b] += truth[j] * kept[a] * flipped[b];
  }
  return out;
}

double PrintedCompoundMass(const NoisyMeasurementModel& model) {
  // f is the mixture pmf on {0, 1} and vanishes elsewhere.
  double nn = static_cast<double>(model.n());
  double f0 = std::pow(MixturePmf(0, model.p(), model.q()), nn);
  double f1 = std::pow(MixturePmf(1, model.p(), model.q()), nn);
  double total = 0.0;
  for (std::size_t k = 0; k <= model.n(); ++k) total += k == 0 ? f0 : f0 + f1;
  return total;
}

double TrueVsNoisyTail(double z, std::size_t n, double q) {
  CheckProbability(q, "q");
  double nn = static_cast<double>(n);
  return GaussianUpperTail(z, nn * (1 - q), nn * q * (1 - q));
}

LogProbability ExactTrueVsNoisyTail(std::size_t k, std::size_t n, double q) {
  CheckProbability(q, "q");
  return BinomialUpperTail(k, n, 1.0 - q);
}

double MaxGaussianTailError(std::size_t n, double r, bool continuity_correction) {
  double nn = static_cast<double>(n);
  double mean = nn * r, var = nn * r * (1 - r);
  // Exact upper tails from the top down, accumulated in linear space.
  std::vector<double> pmf = BinomialPmfVector(n, r);
  std::vector<double> upper(n + 2, 0.0);
  for (std::size_t k = n + 1; k-- > 0;) upper[k] = upper[k + 1] + pmf[k];
  double worst = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    double z = static_cast<double>(k) - (continuity_correction ? 0.5 : 0.0);
    worst = std::max(worst, std::abs(GaussianUpperTail(z, mean, var) - std::min(1.0, upper[k])));
  }
  return worst;
}

LogProbability OutsideMass(std::size_t n, double r, std::size_t lo, std::size_t hi) {
  double below = lo == 0 ? kNegInf : BinomialLowerTail(lo - 1, n, r).log_value;
  double above = hi >= n ? kNegInf : BinomialUpperTail(hi + 1, n, r).log_value;
  return {LogAdd(below, above)};
}

ConcentrationInterval TightestSymmetricInterval(std::size_t n, double rate, double mass) {
  if (n < 1) throw ValidationError("TightestSymmetricInterval: n must be >= 1");
  CheckProbability(rate, "rate");
  if (!(mass > 0.0 && mass < 1.0)) {
    throw ValidationError("TightestSymmetricInterval: mass must lie in (0, 1)");
  }
  double nn = static_cast<double>(n);
  double mu = nn * rate;
  double alpha = 1.0 - mass;
  std::vector<double> widths(n + 1);
  for (std::size_t k = 0; k <= n; ++k) widths[k] = std::abs(static_cast<double>(k) - mu);
  std::sort(widths.begin(), widths.end());
  widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
  constexpr double kFuzz = 1e-9;
  auto bounds = [&](double h) {
    double lo = std::ceil(mu - h - kFuzz);
    double hi = std::floor(mu + h + kFuzz);
    return std::pair<std::size_t, std::size_t>(
        static_cast<std::size_t>(std::max(0.0, lo)),
        static_cast<std::size_t>(std::min(nn, hi)));
  };
  // Outside mass is nonincreasing in the half-width: binary search.
  std::size_t left = 0, right = widths.size() - 1;
  while (left < right) {
    std::size_t mid = (left + right) / 2;
    auto [lo, hi] = bounds(widths[mid]);
    if (OutsideMass(n, rate, lo, hi).Value() <= alpha) {
      right = mid;
    } else {
      left = mid + 1;
    }
  }
  auto [lo, hi] = bounds(widths[left]);
  ConcentrationInterval out;
  out.n = n;
  out.mass = mass;
  out.lo_count = lo;
  out.hi_count = hi;
  out.lo = static_cast<double>(lo) / nn;
  out.hi = static_cast<double>(hi) / nn;
  out.outside = OutsideMass(n, rate, lo, hi);
  return out;
}

std::vector<ConcentrationInterval> ConcentrationTable(
    const std::vector<std::size_t>& n_list, const std::vector<ConcentrationCase>& cases,
    const std::vector<double>& masses) {
  std::vector<ConcentrationInterval> rows;
  for (std::size_t n : n_list) {
    for (const auto& c : cases) {
      CheckProbability(c.q, "q");
      double rate = c.law == PairLaw::kRandomPair ? 0.5 : c.q;
      for (double m : masses) {
        ConcentrationInterval row = TightestSymmetricInterval(n, rate, m);
        row.law = c.law;
        row.q = c.q;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace cns

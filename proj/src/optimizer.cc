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

#include "cns/optimizer.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "cns/errors.h"
#include "cns/parallel.h"

namespace cns {
namespace {

double Penalized(const BlackBoxPoint& p, double rho) {
  return p.objective - rho * std::max(0.0, -p.slack);
}

// Counts evaluations, records the trace, and keeps the incumbent.
class Tracker {
 public:
  Tracker(const BlackBox& f, std::size_t budget) : f_(f), budget_(budget) {}

  std::size_t remaining() const { return budget_ - result_.evaluations; }

  BlackBoxPoint Eval(const RVector& x) { return EvalBatch({x}).front(); }

  // Evaluates in parallel, records in index order. Truncates to the budget.
  std::vector<BlackBoxPoint> EvalBatch(const std::vector<RVector>& xs) {
    std::size_t n = std::min(xs.size(), remaining());
    std::vector<BlackBoxPoint> out(n);
    ParallelFor(n, [&](std::size_t i) { out[i] = f_(xs[i]); });
    for (std::size_t i = 0; i < n; ++i) Record(xs[i], out[i]);
    return out;
  }

  BlackBoxResult Finish() { return std::move(result_); }

 private:
  void Record(const RVector& x, const BlackBoxPoint& p) {
    result_.trace.push_back({result_.evaluations, p.objective, p.slack});
    ++result_.evaluations;
    bool better;
    if (p.feasible) {
      better = !result_.feasible_found || p.objective > result_.best.objective;
    } else if (result_.feasible_found) {
      better = false;
    } else if (result_.best_x.size() == 0) {
      better = true;
    } else {
      double v = std::max(0.0, -p.slack), bv = std::max(0.0, -result_.best.slack);
      better = v < bv || (v == bv && p.objective > result_.best.objective);
    }
    if (better) {
      result_.best_x = x;
      result_.best = p;
      result_.feasible_found = result_.feasible_found || p.feasible;
    }
  }

  const BlackBox& f_;
  std::size_t budget_;
  BlackBoxResult result_;
};

RVector Clip(const RVector& x, const RVector& lo, const RVector& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

void RandomSearch(Tracker& t, const RVector& lo, const RVector& hi,
                  const OptimizerConfig& config) {
  CounterRng rng = MakeStream(config.seed, "random-search");
  constexpr std::size_t kBatch = 32;
  while (t.remaining() > 0) {
    std::vector<RVector> batch;
    std::size_t n = std::min(kBatch, t.remaining());
    for (std::size_t b = 0; b < n; ++b) {
      RVector x(lo.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = lo(i) + rng.Uniform() * (hi(i) - lo(i));
      batch.push_back(std::move(x));
    }
    t.EvalBatch(batch);
  }
}

void OnePlusOneEs(Tracker& t, const RVector& lo, const RVector& hi, RVector x,
                  BlackBoxPoint px, const OptimizerConfig& config) {
  CounterRng rng = MakeStream(config.seed, "one-plus-one-es");
  const RVector x0 = x;
  const BlackBoxPoint p0 = px;
  RVector width = hi - lo;
  double sigma = config.initial_step;
  double rho = config.initial_penalty;
  // 1/5th rule: success grows the step by e^{1/3}, failure shrinks it by
  // e^{-1/12}, which is stationary at a 1/5 success rate.
  const double grow = std::exp(1.0 / 3.0), shrink = std::exp(-1.0 / 12.0);
  while (t.remaining() > 0) {
    if (!px.feasible) rho = std::min(2.0 * rho, config.max_penalty);
    RVector child(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) child(i) = x(i) + sigma * width(i) * rng.Normal();
    child = Clip(child, lo, hi);
    BlackBoxPoint pc = t.Eval(child);
    if (Penalized(pc, rho) >= Penalized(px, rho)) {
      x = std::move(child);
      px = pc;
      sigma *= grow;
    } else {
      sigma *= shrink;
    }
    sigma = std::clamp(sigma, 1e-8, 1.0);
    // A collapsed step means a local optimum; start a fresh walk.
    if (sigma < config.restart_step) {
      x = x0;
      px = p0;
      sigma = config.initial_step;
    }
  }
}

void FiniteDifference(Tracker& t, const RVector& lo, const RVector& hi, RVector x,
                      BlackBoxPoint px, const OptimizerConfig& config) {
  const Eigen::Index n = x.size();
  RVector width = hi - lo;
  double step = config.initial_step;
  double rho = config.initial_penalty;
  constexpr int kLineSearchTries = 6;
  while (t.remaining() > static_cast<std::size_t>(n)) {
    if (!px.feasible) rho = std::min(2.0 * rho, config.max_penalty);
    double base = Penalized(px, rho);

    std::vector<RVector> probes;
    std::vector<double> h(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      double hi_step = config.fd_step * width(i);
      h[static_cast<std::size_t>(i)] = x(i) + hi_step <= hi(i) ? hi_step : -hi_step;
      RVector p = x;
      p(i) += h[static_cast<std::size_t>(i)];
      probes.push_back(std::move(p));
    }
    std::vector<BlackBoxPoint> vals = t.EvalBatch(probes);

    // Projected, width-scaled ascent direction.
    RVector d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double g = (Penalized(vals[static_cast<std::size_t>(i)], rho) - base) /
                 h[static_cast<std::size_t>(i)];
      double di = g * width(i);
      if ((x(i) <= lo(i) && di < 0) || (x(i) >= hi(i) && di > 0)) di = 0.0;
      d(i) = di;
    }
    double scale = d.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) break;
    d /= scale;

    bool accepted = false;
    for (int tries = 0; tries < kLineSearchTries && t.remaining() > 0; ++tries) {
      RVector xn = Clip(x + step * d.cwiseProduct(width), lo, hi);
      BlackBoxPoint pn = t.Eval(xn);
      if (Penalized(pn, rho) > base) {
        x = std::move(xn);
        px = pn;
        step = std::min(2.0 * step, 1.0);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted && step < 1e-9) break;
  }
}

}  // namespace

std::string_view ToString(Strategy s) {
  switch (s) {
    case Strategy::kRandomSearch: return "random-search";
    case Strategy::kOnePlusOneEs: return "one-plus-one-es";
    case Strategy::kFiniteDifference: return "finite-difference";
  }
  return "finite-difference";
}

Strategy ParseStrategy(std::string_view s) {
  for (Strategy v : {Strategy::kRandomSearch, Strategy::kOnePlusOneEs,
                     Strategy::kFiniteDifference}) {
    if (s == ToString(v)) return v;
  }
  throw ConfigurationError("unknown optimizer strategy '" + std::string(s) + "'");
}

VectorDistribution NoiseParameterization::ToDistribution() const {
  return VectorDistribution::Gaussian(mean, scale);
}

double NoiseParameterization::Energy() const {
  return mean.squaredNorm() + scale.squaredNorm();
}

double NoiseParameterization::EnergyFraction(const std::vector<std::size_t>& subset) const {
  double total = Energy();
  if (!(total > 0.0)) return 0.0;
  double on = 0.0;
  for (std::size_t i : subset) {
    if (i >= dimension) throw DimensionError("EnergyFraction: subset index out of range");
    auto k = static_cast<Eigen::Index>(i);
    on += mean(k) * mean(k) + scale(k) * scale(k);
  }
  return on / total;
}

void NoiseSpace::Validate() const {
  std::vector<std::string> errors;
  if (dimension < 1) errors.push_back("noise space: dimension must be >= 1");
  std::set<std::size_t> seen;
  for (std::size_t i : support) {
    if (i >= dimension) errors.push_back("noise space: support index " + std::to_string(i) + " out of range");
    if (!seen.insert(i).second) errors.push_back("noise space: repeated support index " + std::to_string(i));
  }
  if (!search_mean && !search_variance) errors.push_back("noise space: nothing to search");
  if (search_mean && !(mean_bound > 0.0)) errors.push_back("noise space: mean_bound must be > 0");
  if (search_variance && !(variance_bound > 0.0)) {
    errors.push_back("noise space: variance_bound must be > 0");
  }
  if (!errors.empty()) throw ConfigurationError(std::move(errors));
}

std::vector<std::size_t> NoiseSpace::EffectiveSupport() const {
  if (!support.empty()) return support;
  std::vector<std::size_t> all(dimension);
  for (std::size_t i = 0; i < dimension; ++i) all[i] = i;
  return all;
}

std::size_t NoiseSpace::ParameterCount() const {
  std::size_t s = EffectiveSupport().size();
  return (search_mean ? s : 0) + (search_variance ? s : 0);
}

RVector NoiseSpace::Lower() const {
  std::size_t s = EffectiveSupport().size();
  RVector lo(static_cast<Eigen::Index>(ParameterCount()));
  Eigen::Index k = 0;
  if (search_mean) for (std::size_t i = 0; i < s; ++i) lo(k++) = -mean_bound;
  if (search_variance) for (std::size_t i = 0; i < s; ++i) lo(k++) = 0.0;
  return lo;
}

RVector NoiseSpace::Upper() const {
  std::size_t s = EffectiveSupport().size();
  RVector hi(static_cast<Eigen::Index>(ParameterCount()));
  Eigen::Index k = 0;
  if (search_mean) for (std::size_t i = 0; i < s; ++i) hi(k++) = mean_bound;
  if (search_variance) for (std::size_t i = 0; i < s; ++i) hi(k++) = variance_bound;
  return hi;
}

RVector NoiseSpace::ZeroPoint() const {
  return RVector::Zero(static_cast<Eigen::Index>(ParameterCount()));
}

NoiseParameterization NoiseSpace::Decode(const RVector& x) const {
  if (static_cast<std::size_t>(x.size()) != ParameterCount()) {
    throw DimensionError("NoiseSpace::Decode: parameter vector has wrong length");
  }
  std::vector<std::size_t> sup = EffectiveSupport();
  NoiseParameterization n;
  n.dimension = dimension;
  n.support = sup;
  n.kind = sup.size() == dimension ? NoiseParameterization::Kind::kGaussianDiagonal
                                   : NoiseParameterization::Kind::kSparseSupport;
  auto m = static_cast<Eigen::Index>(dimension);
  n.mean = RVector::Zero(m);
  n.scale = RVector::Zero(m);
  Eigen::Index k = 0;
  if (search_mean) {
    for (std::size_t i : sup) n.mean(static_cast<Eigen::Index>(i)) = x(k++);
  }
  if (search_variance) {
    for (std::size_t i : sup) n.scale(static_cast<Eigen::Index>(i)) = std::sqrt(std::max(0.0, x(k++)));
  }
  return n;
}

BlackBoxResult Maximize(const BlackBox& f, const RVector& lower, const RVector& upper,
                        const RVector& x0, const OptimizerConfig& config) {
  if (lower.size() == 0) throw ConfigurationError("Maximize: empty parameter space");
  if (lower.size() != upper.size() || x0.size() != lower.size()) {
    throw DimensionError("Maximize: bounds and start point differ in length");
  }
  if (config.budget < 1) throw ConfigurationError("Maximize: budget must be >= 1");
  if ((upper.array() < lower.array()).any()) throw ConfigurationError("Maximize: empty box");
  Tracker t(f, config.budget);
  RVector start = Clip(x0, lower, upper);
  BlackBoxPoint p0 = t.Eval(start);
  switch (config.strategy) {
    case Strategy::kRandomSearch: RandomSearch(t, lower, upper, config); break;
    case Strategy::kOnePlusOneEs: OnePlusOneEs(t, lower, upper, start, p0, config); break;
    case Strategy::kFiniteDifference: FiniteDifference(t, lower, upper, start, p0, config); break;
  }
  return t.Finish();
}

OptimizationResult Optimize(const ObjectiveSpec& spec, const NoiseSpace& space,
                            const OptimizerConfig& config) {
  space.Validate();
  spec.Validate();
  if (space.dimension != spec.dimension()) {
    throw DimensionError("Optimize: noise space and baselines differ in dimension");
  }
  BlackBox f = [&](const RVector& x) {
    ObjectiveValue v = Evaluate(space.Decode(x).ToDistribution(), spec);
    return BlackBoxPoint{v.objective, v.slack, v.feasible};
  };
  BlackBoxResult r = Maximize(f, space.Lower(), space.Upper(), space.ZeroPoint(), config);
  OptimizationResult out;
  out.best_noise = space.Decode(r.best_x);
  out.components = Evaluate(out.best_noise.ToDistribution(), spec);
  out.objective_value = out.components.objective;
  out.constraint_satisfied = r.feasible_found;
  out.trace = std::move(r.trace);
  out.evaluations = r.evaluations;
  out.seed = config.seed;
  return out;
}

}  // namespace cns

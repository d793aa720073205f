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

#ifndef CNS_OPTIMIZER_H_
#define CNS_OPTIMIZER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "cns/objectives.h"

namespace cns {

// Searchable form of the noise aleph.
struct NoiseParameterization {
  enum class Kind { kGaussianDiagonal, kSparseSupport };
  Kind kind = Kind::kGaussianDiagonal;
  std::size_t dimension = 0;
  std::vector<std::size_t> support;  // coordinates that may carry noise
  RVector mean;                      // full length m, zero off support
  RVector scale;                     // full length m, zero off support

  VectorDistribution ToDistribution() const;
  double TotalVariance() const { return scale.squaredNorm(); }
  // E|aleph|^2 = sum mean_i^2 + scale_i^2.
  double Energy() const;
  // Share of Energy() on `subset`; 0 when the energy is 0.
  double EnergyFraction(const std::vector<std::size_t>& subset) const;
};

// Box-constrained parameters: per support coordinate, optionally a mean in
// [-mean_bound, mean_bound] and a variance in [0, variance_bound].
struct NoiseSpace {
  std::size_t dimension = 0;
  std::vector<std::size_t> support;  // empty: all coordinates
  bool search_mean = false;
  bool search_variance = true;
  double mean_bound = 1.0;
  double variance_bound = 10.0;

  void Validate() const;
  std::vector<std::size_t> EffectiveSupport() const;
  std::size_t ParameterCount() const;
  RVector Lower() const;
  RVector Upper() const;
  // Parameter layout: means of the support first, then variances.
  NoiseParameterization Decode(const RVector& x) const;
  RVector ZeroPoint() const;
};

enum class Strategy { kRandomSearch, kOnePlusOneEs, kFiniteDifference };
std::string_view ToString(Strategy s);
Strategy ParseStrategy(std::string_view s);

struct OptimizerConfig {
  Strategy strategy = Strategy::kFiniteDifference;
  std::size_t budget = 2000;     // objective evaluations
  std::uint64_t seed = 0;
  double initial_step = 0.1;     // fraction of the box width
  double fd_step = 1e-2;         // fraction of the box width
  double restart_step = 1e-3;    // ES restarts from x0 below this step; 0 disables
  double initial_penalty = 1.0;  // weight on constraint violation
  double max_penalty = 1e6;
};

struct TraceEntry {
  std::size_t iteration = 0;  // evaluation index
  double objective = 0.0;
  double slack = 0.0;
};

struct BlackBoxPoint {
  double objective = 0.0;
  double slack = 0.0;  // >= 0 feasible
  bool feasible = true;
};

using BlackBox = std::function<BlackBoxPoint(const RVector&)>;

struct BlackBoxResult {
  RVector best_x;
  BlackBoxPoint best;
  bool feasible_found = false;
  std::vector<TraceEntry> trace;
  std::size_t evaluations = 0;
};

// Maximizes f over the box [lower, upper] starting from x0. The penalized
// score is objective - rho * max(0, -slack); rho doubles whenever the
// current iterate is infeasible. Returns the best feasible point seen, or if
// none, the point with the smallest violation (ties: larger objective).
// Candidate evaluations within one iteration run in parallel; ties resolve
// to the lowest index.
BlackBoxResult Maximize(const BlackBox& f, const RVector& lower, const RVector& upper,
                        const RVector& x0, const OptimizerConfig& config);

struct OptimizationResult {
  NoiseParameterization best_noise;
  double objective_value = 0.0;
  ObjectiveValue components;
  bool constraint_satisfied = false;
  std::vector<TraceEntry> trace;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
};

// Searches aleph in `space` for the objective described by `spec`, starting at zero noise.
OptimizationResult Optimize(const ObjectiveSpec& spec, const NoiseSpace& space,
                            const OptimizerConfig& config);

}  // namespace cns

#endif  // CNS_OPTIMIZER_H_

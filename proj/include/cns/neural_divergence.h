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

#ifndef CNS_NEURAL_DIVERGENCE_H_
#define CNS_NEURAL_DIVERGENCE_H_

#include <cstddef>
#include <cstdint>

#include "cns/oda_models.h"

namespace cns {

struct JsdEstimateConfig {
  std::size_t samples = 2000;  // per distribution; must be >= 100
  std::uint64_t seed = 0;
  std::size_t k_neighbors = 5;  // empirical kinds only
};

// Base-2 JS distance between two neural distributions.
// Gaussian pairs: Monte Carlo over exact log densities, with both sample
// sets drawn from the same streams. Coordinates where both scales are zero
// are dropped if the means agree; any other zero-scale mismatch means
// singular supports and returns 1.
// Empirical operands: k-nearest-neighbour density ratio proxy.
double JsdEstimate(const VectorDistribution& p, const VectorDistribution& q,
                   const JsdEstimateConfig& config);

}  // namespace cns

#endif  // CNS_NEURAL_DIVERGENCE_H_

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

#ifndef CNS_DIVERGENCE_H_
#define CNS_DIVERGENCE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "cns/dense_state.h"

namespace cns {

// Nonnegative entries summing to 1 within 1e-10. Zeros allowed.
class ProbabilityVector {
 public:
  static constexpr double kTolerance = 1e-10;
  explicit ProbabilityVector(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& values() const { return probs_; }

 private:
  std::vector<double> probs_;
};

enum class LogBase { kTwo, kE };

// Shannon entropy with 0 log 0 = 0.
double ShannonEntropy(const ProbabilityVector& p, LogBase base = LogBase::kTwo);

// Jensen-Shannon distance (square root of the divergence).
double JsdClassical(const ProbabilityVector& p, const ProbabilityVector& q,
                    LogBase base = LogBase::kTwo);

// Von Neumann entropy; eigenvalues below 1e-14 contribute 0.
double VonNeumannEntropy(const CMatrix& rho, LogBase base = LogBase::kTwo);

// Quantum Jensen-Shannon distance sqrt(S(tau) - S(rho)/2 - S(sigma)/2).
double Qjsd(const DensityMatrix& rho, const DensityMatrix& sigma,
            LogBase base = LogBase::kTwo);

// The classical shortcut for |psi> = sum sqrt(p_i)|i>, |phi> = sum sqrt(q_i)|i>,
// reported next to the exact QJSD of the two rank-1 projectors.
struct PureReductionReport {
  double reduction;  // JsdClassical(p, q)
  double exact;      // Qjsd of the projectors
};
PureReductionReport QjsdPureReduction(const ProbabilityVector& p,
                                      const ProbabilityVector& q,
                                      LogBase base = LogBase::kTwo);

// sqrt(h(b^2 / 2)) with h the binary entropy in `base`.
double RogaBound(double bures, LogBase base = LogBase::kTwo);

}  // namespace cns

#endif  // CNS_DIVERGENCE_H_

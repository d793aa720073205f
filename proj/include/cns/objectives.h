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

#ifndef CNS_OBJECTIVES_H_
#define CNS_OBJECTIVES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cns/oda_models.h"

namespace cns {

// SMON, DMON: model-optimal defensive noise (state, dynamics).
// SION, DION: information-optimal defensive noise.
// SMOA, DMOA: model-optimal alteration attacks.
enum class Variant { kSmon, kDmon, kSion, kDion, kSmoa, kDmoa };
std::string_view ToString(Variant v);
Variant ParseVariant(std::string_view s);
bool IsDefense(Variant v);

// How several baselines Q_1..Q_n combine.
enum class Aggregation { kMean, kWorstCase };

// DMOA attainment: 1 - 1/2 E||U - Phi|| (closeness) or 1/2 E||U - Phi||.
enum class DmoaOrientation { kCloseness, kDistance };

struct ObjectiveSpec {
  Variant variant = Variant::kSmon;
  double lambda = 0.0;
  double mu = 0.0;
  std::vector<VectorDistribution> baselines;  // Q
  Aggregation aggregation = Aggregation::kMean;
  // Defender class H (SMON) or attacker models (SMOA).
  std::optional<ReadoutClass> readout_class;
  // Defender class H (DMON) or attacker models (DMOA).
  std::optional<DynamicsClass> dynamics_class;
  // Ground-truth channel T of the simulated subject.
  std::optional<ReadoutModel> truth_readout;
  std::optional<DynamicsModel> truth_dynamics;
  std::optional<CognitiveDistribution> target_state;  // B
  std::optional<UnitaryOperator> target_operator;     // Phi
  DmoaOrientation orientation = DmoaOrientation::kCloseness;
  std::size_t mc_samples = 1000;
  std::size_t divergence_samples = 2000;
  std::uint64_t seed = 0;

  // Throws ConfigurationError listing every violation.
  void Validate() const;
  std::size_t dimension() const;
};

// objective = term - lambda * penalty. `term` is worst_case_S, the halved
// operator difference, the divergence, or the attainment; `penalty` is the
// cognitive-alteration penalty or, for attacks, the detectability.
// slack >= 0 iff feasible; attacks are unconstrained (slack 0).
struct ObjectiveValue {
  double objective = 0.0;
  double term = 0.0;
  double penalty = 0.0;
  bool feasible = true;
  double slack = 0.0;
};

ObjectiveValue EvalSmon(const VectorDistribution& aleph, const ObjectiveSpec& spec);
ObjectiveValue EvalDmon(const VectorDistribution& aleph, const ObjectiveSpec& spec);
ObjectiveValue EvalSion(const VectorDistribution& aleph, const ObjectiveSpec& spec);
ObjectiveValue EvalDion(const VectorDistribution& aleph, const ObjectiveSpec& spec);
ObjectiveValue EvalSmoa(const VectorDistribution& aleph, const ObjectiveSpec& spec);
ObjectiveValue EvalDmoa(const VectorDistribution& aleph, const ObjectiveSpec& spec);

// Dispatches on spec.variant.
ObjectiveValue Evaluate(const VectorDistribution& aleph, const ObjectiveSpec& spec);

// min over members of S(F(Q), F(Q + aleph)).
double WorstCaseS(const ReadoutClass& h, const VectorDistribution& q,
                  const VectorDistribution& shifted, const McConfig& config);

// Union of members of every candidate class whose worst-case S under aleph
// reaches mu. Duplicate models are kept once.
struct EnsembleResult {
  std::vector<ReadoutModel> members;
  std::vector<double> class_minima;  // per candidate, in input order
  bool empty() const { return members.empty(); }
  std::optional<ReadoutClass> AsClass() const;
};
EnsembleResult EnsembleDefenderClass(const std::vector<ReadoutClass>& candidates,
                                     const VectorDistribution& q,
                                     const VectorDistribution& aleph, double mu,
                                     const McConfig& config);

}  // namespace cns

#endif  // CNS_OBJECTIVES_H_

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

#include "cns/objectives.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cns/errors.h"
#include "cns/neural_divergence.h"

namespace cns {
namespace {

// Per-baseline pieces before aggregation.
struct Piece {
  double term = 0.0;
  double penalty = 0.0;
  double constraint = 0.0;  // compared against mu
};

McConfig PredictionConfig(const ObjectiveSpec& spec) {
  return {spec.mc_samples, DeriveStreamKey(spec.seed, "prediction")};
}

JsdEstimateConfig DivergenceConfig(const ObjectiveSpec& spec) {
  JsdEstimateConfig c;
  c.samples = spec.divergence_samples;
  c.seed = DeriveStreamKey(spec.seed, "divergence");
  return c;
}

double StaticPenalty(const ObjectiveSpec& spec, const VectorDistribution& q,
                     const VectorDistribution& shifted) {
  McConfig mc = PredictionConfig(spec);
  CognitiveDistribution a = PredictReadout(*spec.truth_readout, q, mc.samples, mc.seed);
  CognitiveDistribution b = PredictReadout(*spec.truth_readout, shifted, mc.samples, mc.seed);
  return Qjsd(b.density(), a.density());
}

double DynamicPenalty(const ObjectiveSpec& spec, const VectorDistribution& q,
                      const VectorDistribution& shifted) {
  McConfig mc = PredictionConfig(spec);
  return Qjsd(ChoiMixture(*spec.truth_dynamics, shifted, mc),
              ChoiMixture(*spec.truth_dynamics, q, mc));
}

// Static truth channel when present, else the dynamics channel.
double DefensePenalty(const ObjectiveSpec& spec, const VectorDistribution& q,
                      const VectorDistribution& shifted) {
  if (spec.truth_readout) return StaticPenalty(spec, q, shifted);
  return DynamicPenalty(spec, q, shifted);
}

double Divergence(const ObjectiveSpec& spec, const VectorDistribution& q,
                  const VectorDistribution& shifted) {
  return JsdEstimate(q, shifted, DivergenceConfig(spec));
}

template <typename PieceFn>
ObjectiveValue Aggregate(const VectorDistribution& aleph, const ObjectiveSpec& spec,
                         Variant expected, PieceFn piece_fn) {
  if (spec.variant != expected) {
    throw ConfigurationError(std::string("objective evaluator for ") +
                             std::string(ToString(expected)) + " called with variant " +
                             std::string(ToString(spec.variant)));
  }
  spec.Validate();
  if (aleph.dimension() != spec.dimension()) {
    throw DimensionError("noise dimension " + std::to_string(aleph.dimension()) +
                         " does not match baseline dimension " +
                         std::to_string(spec.dimension()));
  }
  std::vector<Piece> pieces;
  pieces.reserve(spec.baselines.size());
  for (const auto& q : spec.baselines) {
    VectorDistribution shifted = ShiftDistribution(q, aleph, spec.seed);
    pieces.push_back(piece_fn(q, shifted));
  }
  Piece agg;
  if (spec.aggregation == Aggregation::kMean) {
    for (const auto& p : pieces) {
      agg.term += p.term;
      agg.penalty += p.penalty;
      agg.constraint += p.constraint;
    }
    double n = static_cast<double>(pieces.size());
    agg.term /= n;
    agg.penalty /= n;
    agg.constraint /= n;
  } else {
    std::size_t worst = 0;
    double worst_obj = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      double obj = pieces[i].term - spec.lambda * pieces[i].penalty;
      if (obj < worst_obj) {
        worst_obj = obj;
        worst = i;
      }
    }
    agg = pieces[worst];
  }
  ObjectiveValue v;
  v.term = agg.term;
  v.penalty = agg.penalty;
  v.objective = agg.term - spec.lambda * agg.penalty;
  if (IsDefense(spec.variant)) {
    v.slack = agg.constraint - spec.mu;
    v.feasible = v.slack >= 0.0;
  }
  return v;
}

}  // namespace

std::string_view ToString(Variant v) {
  switch (v) {
    case Variant::kSmon: return "SMON";
    case Variant::kDmon: return "DMON";
    case Variant::kSion: return "SION";
    case Variant::kDion: return "DION";
    case Variant::kSmoa: return "SMOA";
    case Variant::kDmoa: return "DMOA";
  }
  return "SMON";
}

Variant ParseVariant(std::string_view s) {
  for (Variant v : {Variant::kSmon, Variant::kDmon, Variant::kSion, Variant::kDion,
                    Variant::kSmoa, Variant::kDmoa}) {
    if (s == ToString(v)) return v;
  }
  throw ConfigurationError("unknown objective variant '" + std::string(s) + "'");
}

bool IsDefense(Variant v) { return v != Variant::kSmoa && v != Variant::kDmoa; }

std::size_t ObjectiveSpec::dimension() const {
  return baselines.empty() ? 0 : baselines.front().dimension();
}

void ObjectiveSpec::Validate() const {
  std::vector<std::string> errors;
  std::string name(ToString(variant));
  if (baselines.empty()) errors.push_back(name + ": at least one baseline Q is required");
  std::size_t m = dimension();
  for (const auto& q : baselines) {
    if (q.dimension() != m) errors.push_back(name + ": baselines differ in dimension");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) errors.push_back(name + ": lambda must be >= 0");
  if (!(mu >= 0.0 && mu <= 1.0)) errors.push_back(name + ": mu must lie in [0, 1]");
  if (mc_samples < 1) errors.push_back(name + ": mc_samples must be >= 1");
  bool needs_divergence = variant == Variant::kSion || variant == Variant::kDion ||
                          variant == Variant::kSmoa || variant == Variant::kDmoa;
  if (needs_divergence && divergence_samples < 100) {
    errors.push_back(name + ": divergence_samples must be >= 100");
  }
  auto check_readouts = [&](const char* what) {
    if (!readout_class) {
      errors.push_back(name + ": " + what + " readout models are required");
      return;
    }
    for (const auto& f : readout_class->members()) {
      if (f.input_dimension != m) errors.push_back(name + ": readout '" + f.name + "' has wrong m");
    }
  };
  auto check_dynamics = [&](const char* what) {
    if (!dynamics_class) {
      errors.push_back(name + ": " + what + " dynamics models are required");
      return;
    }
    for (const auto& g : dynamics_class->members()) {
      if (g.input_dimension != m) errors.push_back(name + ": dynamics '" + g.name + "' has wrong m");
    }
  };
  if (truth_readout && truth_readout->input_dimension != m) {
    errors.push_back(name + ": truth readout has wrong m");
  }
  if (truth_dynamics && truth_dynamics->input_dimension != m) {
    errors.push_back(name + ": truth dynamics has wrong m");
  }
  switch (variant) {
    case Variant::kSmon:
      check_readouts("defender");
      if (!truth_readout) errors.push_back(name + ": a ground-truth readout channel is required");
      break;
    case Variant::kDmon:
      check_dynamics("defender");
      if (!truth_readout && !truth_dynamics) {
        errors.push_back(name + ": a ground-truth channel is required");
      }
      break;
    case Variant::kSion:
      if (!truth_readout && !truth_dynamics) {
        errors.push_back(name + ": a ground-truth channel is required");
      }
      break;
    case Variant::kDion:
      if (!truth_dynamics) errors.push_back(name + ": a ground-truth dynamics channel is required");
      break;
    case Variant::kSmoa:
      check_readouts("attacker");
      if (!target_state) {
        errors.push_back(name + ": target cognitive distribution B is required");
      } else if (readout_class) {
        for (const auto& f : readout_class->members()) {
          if (f.outcomes() != target_state->outcomes()) {
            errors.push_back(name + ": target B has a different outcome count than '" + f.name + "'");
          }
        }
      }
      break;
    case Variant::kDmoa:
      check_dynamics("attacker");
      if (!target_operator) {
        errors.push_back(name + ": target operator Phi is required");
      } else if (dynamics_class) {
        for (const auto& g : dynamics_class->members()) {
          if (g.cogit_dimension != target_operator->dimension()) {
            errors.push_back(name + ": target Phi has the wrong dimension for '" + g.name + "'");
          }
        }
      }
      break;
  }
  if (!errors.empty()) throw ConfigurationError(std::move(errors));
}

double WorstCaseS(const ReadoutClass& h, const VectorDistribution& q,
                  const VectorDistribution& shifted, const McConfig& config) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& f : h.members()) worst = std::min(worst, ModelDissimilarityS(f, q, shifted, config));
  return worst;
}

ObjectiveValue EvalSmon(const VectorDistribution& aleph, const ObjectiveSpec& spec) {
  return Aggregate(aleph, spec, Variant::kSmon, [&](const auto& q, const auto& shifted) {
    Piece p;
    p.term = WorstCaseS(*spec.readout_class, q, shifted, PredictionConfig(spec));
    p.penalty = StaticPenalty(spec, q, shifted);
    p.constraint = p.term;
    return p;
  });
}

ObjectiveValue EvalDmon(const VectorDistribution& aleph, const ObjectiveSpec& spec) {
  return Aggregate(aleph, spec, Variant::kDmon, [&](const auto& q, const auto& shifted) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& g : spec.dynamics_class->members()) {
      worst = std::min(worst, MeanOperatorDistance(g, q, shifted, PredictionConfig(spec)));
    }
    Piece p;
    p.term = 0.5 * worst;
    p.constraint = worst;  // mu applies to the un-halved norm
    p.penalty = DefensePenalty(spec, q, shifted);
    return p;
  });
}

ObjectiveValue EvalSion(const VectorDistribution& aleph, const ObjectiveSpec& spec) {
  return Aggregate(aleph, spec, Variant::kSion, [&](const auto& q, const auto& shifted) {
    Piece p;
    p.term = Divergence(spec, q, shifted);
    p.constraint = p.term;
    p.penalty = DefensePenalty(spec, q, shifted);
    return p;
  });
}

ObjectiveValue EvalDion(const VectorDistribution& aleph, const ObjectiveSpec& spec) {
  return Aggregate(aleph, spec, Variant::kDion, [&](const auto& q, const auto& shifted) {
    Piece p;
    p.term = Divergence(spec, q, shifted);
    p.constraint = p.term;
    p.penalty = DynamicPenalty(spec, q, shifted);
    return p;
  });
}

ObjectiveValue EvalSmoa(const VectorDistribution& aleph, const ObjectiveSpec& spec) {
  return Aggregate(aleph, spec, Variant::kSmoa, [&](const auto& q, const auto& shifted) {
    McConfig mc = PredictionConfig(spec);
    ProbabilityVector target = spec.target_state->OutcomeProbs();
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& f : spec.readout_class->members()) {
      CognitiveDistribution c = PredictReadout(f, shifted, mc.samples, mc.seed);
      worst = std::min(worst, 1.0 - JsdClassical(c.OutcomeProbs(), target));
    }
    Piece p;
    p.term = worst;
    p.penalty = Divergence(spec, q, shifted);
    return p;
  });
}

ObjectiveValue EvalDmoa(const VectorDistribution& aleph, const ObjectiveSpec& spec) {
  return Aggregate(aleph, spec, Variant::kDmoa, [&](const auto& q, const auto& shifted) {
    McConfig mc = PredictionConfig(spec);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& g : spec.dynamics_class->members()) {
      double half = 0.5 * MeanDistanceToTarget(g, shifted, *spec.target_operator, mc);
      double a = spec.orientation == DmoaOrientation::kCloseness ? 1.0 - half : half;
      worst = std::min(worst, a);
    }
    Piece p;
    p.term = worst;
    p.penalty = Divergence(spec, q, shifted);
    return p;
  });
}

ObjectiveValue Evaluate(const VectorDistribution& aleph, const ObjectiveSpec& spec) {
  switch (spec.variant) {
    case Variant::kSmon: return EvalSmon(aleph, spec);
    case Variant::kDmon: return EvalDmon(aleph, spec);
    case Variant::kSion: return EvalSion(aleph, spec);
    case Variant::kDion: return EvalDion(aleph, spec);
    case Variant::kSmoa: return EvalSmoa(aleph, spec);
    case Variant::kDmoa: return EvalDmoa(aleph, spec);
  }
  throw ConfigurationError("unknown variant");
}

std::optional<ReadoutClass> EnsembleResult::AsClass() const {
  if (members.empty()) return std::nullopt;
  return ReadoutClass(members);
}

EnsembleResult EnsembleDefenderClass(const std::vector<ReadoutClass>& candidates,
                                     const VectorDistribution& q,
                                     const VectorDistribution& aleph, double mu,
                                     const McConfig& config) {
  if (candidates.empty()) throw ConfigurationError("EnsembleDefenderClass: no candidates");
  EnsembleResult out;
  VectorDistribution shifted = ShiftDistribution(q, aleph, config.seed);
  for (const auto& h : candidates) {
    double s = WorstCaseS(h, q, shifted, config);
    out.class_minima.push_back(s);
    if (s < mu) continue;
    for (const auto& f : h.members()) {
      if (std::find(out.members.begin(), out.members.end(), f) == out.members.end()) {
        out.members.push_back(f);
      }
    }
  }
  return out;
}

}  // namespace cns

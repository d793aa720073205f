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

#ifndef CNS_SCENARIOS_H_
#define CNS_SCENARIOS_H_

#include <cstdint>
#include <vector>

#include "cns/config.h"
#include "cns/objectives.h"
#include "cns/record.h"

namespace cns {

// Runs the configured scenario and returns its record. No files are
// touched. Validates first; sets the thread count from the config.
ResultRecord RunScenario(const ScenarioConfig& config);

// Checks that `dir` is writable, runs, then writes the record there.
ResultRecord RunScenarioToDirectory(const ScenarioConfig& config, const std::string& dir);

// The defend scenario's models, built from (params, seed).
struct SubsetScenario {
  VectorDistribution baseline;     // Q
  ReadoutClass defenders;          // read `subset` only
  DynamicsClass defender_dynamics;
  ReadoutModel truth;              // reads every coordinate
  DynamicsModel truth_dynamics;
};

SubsetScenario BuildSubsetScenario(const DefendParams& params, std::uint64_t seed);

// Objective for one defend run.
ObjectiveSpec DefendSpec(const SubsetScenario& scenario, const DefendParams& params,
                         Variant variant, double lambda, std::uint64_t seed);

// Objectives for the attack demos.
ObjectiveSpec SmoaSpec(const AttackParams& params, double lambda, std::uint64_t seed);
ObjectiveSpec DmoaSpec(const AttackParams& params, double lambda, std::uint64_t seed);

}  // namespace cns

#endif  // CNS_SCENARIOS_H_

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

#ifndef CNS_CONFIG_H_
#define CNS_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cns {

inline constexpr int kConfigSchemaVersion = 1;

enum class ScenarioKind { kStatsVerify, kConcentrationTable, kAlgebraDemo, kDefend, kAttack };

std::string_view ToString(ScenarioKind kind);
// Throws ConfigurationError on an unknown name.
ScenarioKind ParseScenarioKind(std::string_view s);
// JSON key of the parameter block, e.g. "stats_verify".
std::string_view BlockKey(ScenarioKind kind);

struct StatsVerifyParams {
  std::vector<std::size_t> fidelity_dimensions = {8, 16};
  std::size_t samples = 100000;
  std::size_t bures_dimension = 100;
  double bures_threshold = 0.95;
  std::vector<std::size_t> tail_dimensions = {100, 500};
  std::vector<double> tail_thresholds = {0.95, 0.5};
  std::vector<std::size_t> roga_dimensions = {2, 4, 8};
  std::size_t roga_pairs = 10000;
  std::size_t diagonal_pairs = 1000;
  std::size_t cdf_grid_points = 101;

  bool operator==(const StatsVerifyParams&) const = default;
};

struct ConcentrationParams {
  std::vector<std::size_t> n_list = {1000, 10000};
  std::vector<double> q_list = {0.25, 1.0 / 3.0};
  std::vector<double> masses = {1.0 - 1e-6, 1.0 - 2e-6};
  bool random_pair = true;
  std::size_t tail_scan_n = 1000;
  std::vector<double> tail_scan_rates = {0.5, 0.25, 1.0 / 3.0, 0.1};
  std::size_t convolution_n = 200;

  bool operator==(const ConcentrationParams&) const = default;
};

struct AlgebraParams {
  std::size_t n = 1000;
  std::size_t trials = 1000;
  std::size_t dictionary_size = 8;
  std::size_t property_cases = 10000;
  std::size_t property_n = 16;

  bool operator==(const AlgebraParams&) const = default;
};

// Subset scenario: a defender class that reads only `subset`, and a
// ground-truth channel that reads every coordinate.
struct DefendParams {
  std::size_t dimension = 50;
  std::vector<std::size_t> subset = {0, 1, 2, 3, 4};
  double baseline_scale = 0.3;
  std::size_t defender_models = 3;
  double defender_weight_min = 1.0;
  double defender_weight_max = 2.0;
  double defender_bias = 3.0;
  double truth_weight = 0.3;
  double truth_bias = 1.5;
  double dynamics_weight = 0.5;
  std::vector<std::string> variants = {"SMON", "SION", "DMON", "DION"};
  std::vector<double> lambdas = {1.0};
  double mu = 0.3;
  std::size_t budget = 2000;
  std::string strategy = "finite-difference";
  double variance_bound = 10.0;
  std::size_t mc_samples = 4000;
  std::size_t divergence_samples = 2000;

  bool operator==(const DefendParams&) const = default;
};

// Readout alteration: flip the attacker's predicted outcome distribution.
struct SmoaParams {
  bool enabled = true;
  std::size_t dimension = 10;
  std::size_t weighted_coordinates = 2;
  double baseline_scale = 1.0;
  double weight = 2.12;
  double bias = 0.8;
  std::string strategy = "one-plus-one-es";
  std::size_t budget = 1000;
  double mean_bound = 2.0;
  double initial_step = 0.1;

  bool operator==(const SmoaParams&) const = default;
};

// Dynamics alteration: steer a one-axis rotation model toward a fixed target rotation.
struct DmoaParams {
  bool enabled = true;
  std::size_t dimension = 10;
  std::size_t weighted_coordinates = 2;
  double baseline_scale = 0.2;
  double weight = 1.06;
  double target_angle = 2.5;
  std::string orientation = "closeness";
  std::string strategy = "random-search";
  std::size_t budget = 500;
  double mean_bound = 2.0;
  double initial_step = 0.1;

  bool operator==(const DmoaParams&) const = default;
};

struct AttackParams {
  std::vector<double> lambdas = {0.5};
  std::size_t mc_samples = 1000;
  std::size_t divergence_samples = 2000;
  SmoaParams smoa;
  DmoaParams dmoa;

  bool operator==(const AttackParams&) const = default;
};

struct ScenarioConfig {
  int schema_version = kConfigSchemaVersion;
  ScenarioKind scenario = ScenarioKind::kStatsVerify;
  std::uint64_t seed = 0;
  std::string output_dir;
  std::size_t threads = 1;
  // Only the block matching `scenario` is serialized or read.
  StatsVerifyParams stats_verify;
  ConcentrationParams concentration_table;
  AlgebraParams algebra_demo;
  DefendParams defend;
  AttackParams attack;

  bool operator==(const ScenarioConfig&) const = default;
};

// Defaults for `kind` under `seed`.
ScenarioConfig DefaultConfig(ScenarioKind kind, std::uint64_t seed);

// Parses and validates. Unknown keys, wrong types, a missing seed and
// out-of-range values are all collected into one ConfigurationError.
ScenarioConfig ParseConfig(const nlohmann::json& j);
nlohmann::json SerializeConfig(const ScenarioConfig& config);

// Range checks on an already-built config; throws ConfigurationError.
void ValidateConfig(const ScenarioConfig& config);

ScenarioConfig LoadConfigFile(const std::string& path);

// Overrides the scenario's main sample count. Returns false when the
// scenario has none (concentration-table is exact).
bool ApplySamplesOverride(ScenarioConfig& config, std::size_t samples);

}  // namespace cns

#endif  // CNS_CONFIG_H_

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

#include "cns/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "cns/errors.h"
#include "cns/objectives.h"
#include "cns/optimizer.h"

namespace cns {
namespace {

using nlohmann::json;

// Reads one JSON object, recording type errors and unknown keys.
class BlockReader {
 public:
  BlockReader(const json& j, std::string path, std::vector<std::string>& errors)
      : j_(j), path_(std::move(path)), errors_(errors) {
    if (!j_.is_object()) Fail("", "must be an object");
  }

  bool ok() const { return j_.is_object(); }
  bool Has(const char* key) const { return ok() && j_.contains(key); }

  template <class T>
  void Field(const char* key, T& out) {
    seen_.insert(key);
    if (!Has(key)) return;
    Read(j_.at(key), key, out);
  }

  const json& Child(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void RejectUnknown() {
    if (!ok()) return;
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) Fail(k, "unknown key");
    }
  }

  std::string Path(const std::string& key) const {
    return path_.empty() ? key : key.empty() ? path_ : path_ + "." + key;
  }

 private:
  void Fail(const std::string& key, const std::string& what) {
    errors_.push_back(Path(key) + ": " + what);
  }

  void Read(const json& v, const char* key, std::size_t& out) {
    // Built-in documents store small literals as signed integers.
    if (v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      out = v.get<std::size_t>();
    } else if (v.is_number_integer()) {
      Fail(key, "must be non-negative");
    } else {
      Fail(key, "expected an integer");
    }
  }
  void Read(const json& v, const char* key, int& out) {
    if (v.is_number_integer()) out = v.get<int>();
    else Fail(key, "expected an integer");
  }
  void Read(const json& v, const char* key, double& out) {
    if (v.is_number()) out = v.get<double>();
    else Fail(key, "expected a number");
  }
  void Read(const json& v, const char* key, bool& out) {
    if (v.is_boolean()) out = v.get<bool>();
    else Fail(key, "expected true or false");
  }
  void Read(const json& v, const char* key, std::string& out) {
    if (v.is_string()) out = v.get<std::string>();
    else Fail(key, "expected a string");
  }
  template <class T>
  void Read(const json& v, const char* key, std::vector<T>& out) {
    if (!v.is_array()) {
      Fail(key, "expected an array");
      return;
    }
    std::vector<T> tmp(v.size());
    std::size_t before = errors_.size();
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::string item = std::string(key) + "[" + std::to_string(i) + "]";
      Read(v[i], item.c_str(), tmp[i]);
    }
    if (errors_.size() == before) out = std::move(tmp);
  }

  const json& j_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

void ReadBlock(BlockReader& r, StatsVerifyParams& p) {
  r.Field("fidelity_dimensions", p.fidelity_dimensions);
  r.Field("samples", p.samples);
  r.Field("bures_dimension", p.bures_dimension);
  r.Field("bures_threshold", p.bures_threshold);
  r.Field("tail_dimensions", p.tail_dimensions);
  r.Field("tail_thresholds", p.tail_thresholds);
  r.Field("roga_dimensions", p.roga_dimensions);
  r.Field("roga_pairs", p.roga_pairs);
  r.Field("diagonal_pairs", p.diagonal_pairs);
  r.Field("cdf_grid_points", p.cdf_grid_points);
}

void ReadBlock(BlockReader& r, ConcentrationParams& p) {
  r.Field("n_list", p.n_list);
  r.Field("q_list", p.q_list);
  r.Field("masses", p.masses);
  r.Field("random_pair", p.random_pair);
  r.Field("tail_scan_n", p.tail_scan_n);
  r.Field("tail_scan_rates", p.tail_scan_rates);
  r.Field("convolution_n", p.convolution_n);
}

void ReadBlock(BlockReader& r, AlgebraParams& p) {
  r.Field("n", p.n);
  r.Field("trials", p.trials);
  r.Field("dictionary_size", p.dictionary_size);
  r.Field("property_cases", p.property_cases);
  r.Field("property_n", p.property_n);
}

void ReadBlock(BlockReader& r, DefendParams& p) {
  r.Field("dimension", p.dimension);
  r.Field("subset", p.subset);
  r.Field("baseline_scale", p.baseline_scale);
  r.Field("defender_models", p.defender_models);
  r.Field("defender_weight_min", p.defender_weight_min);
  r.Field("defender_weight_max", p.defender_weight_max);
  r.Field("defender_bias", p.defender_bias);
  r.Field("truth_weight", p.truth_weight);
  r.Field("truth_bias", p.truth_bias);
  r.Field("dynamics_weight", p.dynamics_weight);
  r.Field("variants", p.variants);
  r.Field("lambdas", p.lambdas);
  r.Field("mu", p.mu);
  r.Field("budget", p.budget);
  r.Field("strategy", p.strategy);
  r.Field("variance_bound", p.variance_bound);
  r.Field("mc_samples", p.mc_samples);
  r.Field("divergence_samples", p.divergence_samples);
}

void ReadBlock(BlockReader& r, SmoaParams& p) {
  r.Field("enabled", p.enabled);
  r.Field("dimension", p.dimension);
  r.Field("weighted_coordinates", p.weighted_coordinates);
  r.Field("baseline_scale", p.baseline_scale);
  r.Field("weight", p.weight);
  r.Field("bias", p.bias);
  r.Field("strategy", p.strategy);
  r.Field("budget", p.budget);
  r.Field("mean_bound", p.mean_bound);
  r.Field("initial_step", p.initial_step);
}

void ReadBlock(BlockReader& r, DmoaParams& p) {
  r.Field("enabled", p.enabled);
  r.Field("dimension", p.dimension);
  r.Field("weighted_coordinates", p.weighted_coordinates);
  r.Field("baseline_scale", p.baseline_scale);
  r.Field("weight", p.weight);
  r.Field("target_angle", p.target_angle);
  r.Field("orientation", p.orientation);
  r.Field("strategy", p.strategy);
  r.Field("budget", p.budget);
  r.Field("mean_bound", p.mean_bound);
  r.Field("initial_step", p.initial_step);
}

void ReadBlock(BlockReader& r, AttackParams& p, std::vector<std::string>& errors) {
  r.Field("lambdas", p.lambdas);
  r.Field("mc_samples", p.mc_samples);
  r.Field("divergence_samples", p.divergence_samples);
  if (r.Has("smoa")) {
    BlockReader sub(r.Child("smoa"), r.Path("smoa"), errors);
    ReadBlock(sub, p.smoa);
    sub.RejectUnknown();
  }
  if (r.Has("dmoa")) {
    BlockReader sub(r.Child("dmoa"), r.Path("dmoa"), errors);
    ReadBlock(sub, p.dmoa);
    sub.RejectUnknown();
  }
}

json BlockJson(const StatsVerifyParams& p) {
  return {{"fidelity_dimensions", p.fidelity_dimensions},
          {"samples", p.samples},
          {"bures_dimension", p.bures_dimension},
          {"bures_threshold", p.bures_threshold},
          {"tail_dimensions", p.tail_dimensions},
          {"tail_thresholds", p.tail_thresholds},
          {"roga_dimensions", p.roga_dimensions},
          {"roga_pairs", p.roga_pairs},
          {"diagonal_pairs", p.diagonal_pairs},
          {"cdf_grid_points", p.cdf_grid_points}};
}

json BlockJson(const ConcentrationParams& p) {
  return {{"n_list", p.n_list},
          {"q_list", p.q_list},
          {"masses", p.masses},
          {"random_pair", p.random_pair},
          {"tail_scan_n", p.tail_scan_n},
          {"tail_scan_rates", p.tail_scan_rates},
          {"convolution_n", p.convolution_n}};
}

json BlockJson(const AlgebraParams& p) {
  return {{"n", p.n},
          {"trials", p.trials},
          {"dictionary_size", p.dictionary_size},
          {"property_cases", p.property_cases},
          {"property_n", p.property_n}};
}

json BlockJson(const DefendParams& p) {
  return {{"dimension", p.dimension},
          {"subset", p.subset},
          {"baseline_scale", p.baseline_scale},
          {"defender_models", p.defender_models},
          {"defender_weight_min", p.defender_weight_min},
          {"defender_weight_max", p.defender_weight_max},
          {"defender_bias", p.defender_bias},
          {"truth_weight", p.truth_weight},
          {"truth_bias", p.truth_bias},
          {"dynamics_weight", p.dynamics_weight},
          {"variants", p.variants},
          {"lambdas", p.lambdas},
          {"mu", p.mu},
          {"budget", p.budget},
          {"strategy", p.strategy},
          {"variance_bound", p.variance_bound},
          {"mc_samples", p.mc_samples},
          {"divergence_samples", p.divergence_samples}};
}

json BlockJson(const SmoaParams& p) {
  return {{"enabled", p.enabled},
          {"dimension", p.dimension},
          {"weighted_coordinates", p.weighted_coordinates},
          {"baseline_scale", p.baseline_scale},
          {"weight", p.weight},
          {"bias", p.bias},
          {"strategy", p.strategy},
          {"budget", p.budget},
          {"mean_bound", p.mean_bound},
          {"initial_step", p.initial_step}};
}

json BlockJson(const DmoaParams& p) {
  return {{"enabled", p.enabled},
          {"dimension", p.dimension},
          {"weighted_coordinates", p.weighted_coordinates},
          {"baseline_scale", p.baseline_scale},
          {"weight", p.weight},
          {"target_angle", p.target_angle},
          {"orientation", p.orientation},
          {"strategy", p.strategy},
          {"budget", p.budget},
          {"mean_bound", p.mean_bound},
          {"initial_step", p.initial_step}};
}

json BlockJson(const AttackParams& p) {
  return {{"lambdas", p.lambdas},
          {"mc_samples", p.mc_samples},
          {"divergence_samples", p.divergence_samples},
          {"smoa", BlockJson(p.smoa)},
          {"dmoa", BlockJson(p.dmoa)}};
}

// Range checks. `v` collects messages.
class Checker {
 public:
  explicit Checker(std::vector<std::string>& v) : v_(v) {}
  void Require(bool ok, const std::string& path, const std::string& what) {
    if (!ok) v_.push_back(path + ": " + what);
  }
  void Positive(double x, const std::string& path) { Require(x > 0.0, path, "must be > 0"); }
  void AtLeast(std::size_t x, std::size_t lo, const std::string& path) {
    Require(x >= lo, path, "must be >= " + std::to_string(lo));
  }
  void Open01(double x, const std::string& path) {
    Require(x > 0.0 && x < 1.0, path, "must lie in (0, 1)");
  }
  void NonEmpty(bool empty, const std::string& path) { Require(!empty, path, "must be non-empty"); }
  template <class F>
  void Parses(const std::string& s, const std::string& path, F parse) {
    try {
      parse(s);
    } catch (const Error&) {
      v_.push_back(path + ": unknown value \"" + s + "\"");
    }
  }

 private:
  std::vector<std::string>& v_;
};

void Check(const StatsVerifyParams& p, Checker& c) {
  const std::string b = "stats_verify.";
  c.NonEmpty(p.fidelity_dimensions.empty(), b + "fidelity_dimensions");
  for (std::size_t d : p.fidelity_dimensions) {
    c.Require(d >= 2 && d <= 4096, b + "fidelity_dimensions", "entries must lie in [2, 4096]");
  }
  c.AtLeast(p.samples, 100, b + "samples");
  c.Require(p.bures_dimension >= 2 && p.bures_dimension <= 4096, b + "bures_dimension",
            "must lie in [2, 4096]");
  c.Open01(p.bures_threshold, b + "bures_threshold");
  for (std::size_t d : p.tail_dimensions) c.AtLeast(d, 2, b + "tail_dimensions");
  for (double v : p.tail_thresholds) c.Open01(v, b + "tail_thresholds");
  for (std::size_t d : p.roga_dimensions) {
    c.Require(d >= 2 && d <= 64, b + "roga_dimensions", "entries must lie in [2, 64]");
  }
  c.AtLeast(p.roga_pairs, 1, b + "roga_pairs");
  c.AtLeast(p.diagonal_pairs, 1, b + "diagonal_pairs");
  c.AtLeast(p.cdf_grid_points, 2, b + "cdf_grid_points");
}

void Check(const ConcentrationParams& p, Checker& c) {
  const std::string b = "concentration_table.";
  c.NonEmpty(p.n_list.empty(), b + "n_list");
  for (std::size_t n : p.n_list) {
    c.Require(n >= 1 && n <= 10000000, b + "n_list", "entries must lie in [1, 1e7]");
  }
  for (double q : p.q_list) {
    c.Require(q >= 0.0 && q <= 1.0, b + "q_list", "entries must lie in [0, 1]");
  }
  c.NonEmpty(p.masses.empty(), b + "masses");
  for (double m : p.masses) c.Open01(m, b + "masses");
  c.Require(p.tail_scan_n >= 1 && p.tail_scan_n <= 10000000, b + "tail_scan_n",
            "must lie in [1, 1e7]");
  for (double r : p.tail_scan_rates) c.Open01(r, b + "tail_scan_rates");
  c.Require(p.convolution_n >= 1 && p.convolution_n <= 2000, b + "convolution_n",
            "must lie in [1, 2000]");
}

void Check(const AlgebraParams& p, Checker& c) {
  const std::string b = "algebra_demo.";
  c.AtLeast(p.n, 1, b + "n");
  c.AtLeast(p.trials, 1, b + "trials");
  c.AtLeast(p.dictionary_size, 4, b + "dictionary_size");
  c.AtLeast(p.property_cases, 1, b + "property_cases");
  c.AtLeast(p.property_n, 2, b + "property_n");
}

void Check(const DefendParams& p, Checker& c) {
  const std::string b = "defend.";
  c.AtLeast(p.dimension, 1, b + "dimension");
  c.NonEmpty(p.subset.empty(), b + "subset");
  std::set<std::size_t> seen;
  for (std::size_t i : p.subset) {
    c.Require(i < p.dimension, b + "subset", "index " + std::to_string(i) + " out of range");
    c.Require(seen.insert(i).second, b + "subset", "duplicate index " + std::to_string(i));
  }
  c.Positive(p.baseline_scale, b + "baseline_scale");
  c.AtLeast(p.defender_models, 1, b + "defender_models");
  c.Require(p.defender_weight_min <= p.defender_weight_max, b + "defender_weight_min",
            "must not exceed defender_weight_max");
  c.NonEmpty(p.variants.empty(), b + "variants");
  for (const auto& v : p.variants) {
    c.Parses(v, b + "variants", [&](const std::string& s) {
      if (!IsDefense(ParseVariant(s))) throw ConfigurationError("attack variant");
    });
  }
  c.NonEmpty(p.lambdas.empty(), b + "lambdas");
  for (double l : p.lambdas) c.Require(l >= 0.0, b + "lambdas", "entries must be >= 0");
  c.Require(p.mu >= 0.0 && p.mu <= 1.0, b + "mu", "must lie in [0, 1]");
  c.AtLeast(p.budget, 1, b + "budget");
  c.Parses(p.strategy, b + "strategy", [](const std::string& s) { ParseStrategy(s); });
  c.Positive(p.variance_bound, b + "variance_bound");
  c.AtLeast(p.mc_samples, 1, b + "mc_samples");
  c.AtLeast(p.divergence_samples, 100, b + "divergence_samples");
}

template <class P>
void CheckDemo(const P& p, Checker& c, const std::string& b) {
  c.AtLeast(p.dimension, 1, b + "dimension");
  c.Require(p.weighted_coordinates >= 1 && p.weighted_coordinates <= p.dimension,
            b + "weighted_coordinates", "must lie in [1, dimension]");
  c.Positive(p.baseline_scale, b + "baseline_scale");
  c.Parses(p.strategy, b + "strategy", [](const std::string& s) { ParseStrategy(s); });
  c.AtLeast(p.budget, 1, b + "budget");
  c.Positive(p.mean_bound, b + "mean_bound");
  c.Positive(p.initial_step, b + "initial_step");
}

void Check(const AttackParams& p, Checker& c) {
  const std::string b = "attack.";
  c.NonEmpty(p.lambdas.empty(), b + "lambdas");
  for (double l : p.lambdas) c.Require(l >= 0.0, b + "lambdas", "entries must be >= 0");
  c.AtLeast(p.mc_samples, 1, b + "mc_samples");
  c.AtLeast(p.divergence_samples, 100, b + "divergence_samples");
  CheckDemo(p.smoa, c, b + "smoa.");
  CheckDemo(p.dmoa, c, b + "dmoa.");
  c.Require(p.dmoa.orientation == "closeness" || p.dmoa.orientation == "distance",
            b + "dmoa.orientation", "must be \"closeness\" or \"distance\"");
  c.Require(p.smoa.enabled || p.dmoa.enabled, b + "smoa.enabled",
            "at least one of smoa and dmoa must be enabled");
}

std::vector<std::string> Violations(const ScenarioConfig& config) {
  std::vector<std::string> v;
  Checker c(v);
  c.Require(config.schema_version == kConfigSchemaVersion, "schema_version",
            "must be " + std::to_string(kConfigSchemaVersion));
  c.Require(config.threads <= 1024, "threads", "must be <= 1024");
  switch (config.scenario) {
    case ScenarioKind::kStatsVerify: Check(config.stats_verify, c); break;
    case ScenarioKind::kConcentrationTable: Check(config.concentration_table, c); break;
    case ScenarioKind::kAlgebraDemo: Check(config.algebra_demo, c); break;
    case ScenarioKind::kDefend: Check(config.defend, c); break;
    case ScenarioKind::kAttack: Check(config.attack, c); break;
  }
  return v;
}

constexpr ScenarioKind kAllKinds[] = {ScenarioKind::kStatsVerify,
                                      ScenarioKind::kConcentrationTable,
                                      ScenarioKind::kAlgebraDemo, ScenarioKind::kDefend,
                                      ScenarioKind::kAttack};

}  // namespace

std::string_view ToString(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kStatsVerify: return "stats-verify";
    case ScenarioKind::kConcentrationTable: return "concentration-table";
    case ScenarioKind::kAlgebraDemo: return "algebra-demo";
    case ScenarioKind::kDefend: return "defend";
    case ScenarioKind::kAttack: return "attack";
  }
  return "?";
}

ScenarioKind ParseScenarioKind(std::string_view s) {
  for (ScenarioKind k : kAllKinds) {
    if (ToString(k) == s) return k;
  }
  throw ConfigurationError("unknown scenario \"" + std::string(s) + "\"");
}

std::string_view BlockKey(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kStatsVerify: return "stats_verify";
    case ScenarioKind::kConcentrationTable: return "concentration_table";
    case ScenarioKind::kAlgebraDemo: return "algebra_demo";
    case ScenarioKind::kDefend: return "defend";
    case ScenarioKind::kAttack: return "attack";
  }
  return "?";
}

ScenarioConfig DefaultConfig(ScenarioKind kind, std::uint64_t seed) {
  ScenarioConfig c;
  c.scenario = kind;
  c.seed = seed;
  return c;
}

ScenarioConfig ParseConfig(const json& j) {
  std::vector<std::string> errors;
  ScenarioConfig c;
  BlockReader top(j, "", errors);
  if (!top.ok()) throw ConfigurationError(errors);

  top.Field("schema_version", c.schema_version);
  if (!top.Has("schema_version")) errors.push_back("schema_version: missing");
  if (!top.Has("seed")) errors.push_back("seed: missing (a seed is mandatory)");
  top.Field("seed", c.seed);
  top.Field("output_dir", c.output_dir);
  top.Field("threads", c.threads);

  std::string scenario;
  top.Field("scenario", scenario);
  bool have_kind = false;
  if (!top.Has("scenario")) {
    errors.push_back("scenario: missing");
  } else if (!scenario.empty()) {
    try {
      c.scenario = ParseScenarioKind(scenario);
      have_kind = true;
    } catch (const ConfigurationError&) {
      errors.push_back("scenario: unknown value \"" + scenario + "\"");
    }
  }

  for (ScenarioKind k : kAllKinds) {
    std::string key(BlockKey(k));
    if (!j.contains(key)) continue;
    const json& block = top.Child(key.c_str());
    if (have_kind && k != c.scenario) {
      errors.push_back(key + ": block does not match scenario \"" + scenario + "\"");
      continue;
    }
    if (!have_kind) continue;
    BlockReader r(block, key, errors);
    switch (k) {
      case ScenarioKind::kStatsVerify: ReadBlock(r, c.stats_verify); break;
      case ScenarioKind::kConcentrationTable: ReadBlock(r, c.concentration_table); break;
      case ScenarioKind::kAlgebraDemo: ReadBlock(r, c.algebra_demo); break;
      case ScenarioKind::kDefend: ReadBlock(r, c.defend); break;
      case ScenarioKind::kAttack: ReadBlock(r, c.attack, errors); break;
    }
    r.RejectUnknown();
  }
  top.RejectUnknown();

  if (have_kind) {
    auto more = Violations(c);
    errors.insert(errors.end(), more.begin(), more.end());
  }
  if (!errors.empty()) throw ConfigurationError(errors);
  return c;
}

json SerializeConfig(const ScenarioConfig& c) {
  json j = {{"schema_version", c.schema_version},
            {"scenario", std::string(ToString(c.scenario))},
            {"seed", c.seed},
            {"output_dir", c.output_dir},
            {"threads", c.threads}};
  std::string key(BlockKey(c.scenario));
  switch (c.scenario) {
    case ScenarioKind::kStatsVerify: j[key] = BlockJson(c.stats_verify); break;
    case ScenarioKind::kConcentrationTable: j[key] = BlockJson(c.concentration_table); break;
    case ScenarioKind::kAlgebraDemo: j[key] = BlockJson(c.algebra_demo); break;
    case ScenarioKind::kDefend: j[key] = BlockJson(c.defend); break;
    case ScenarioKind::kAttack: j[key] = BlockJson(c.attack); break;
  }
  return j;
}

void ValidateConfig(const ScenarioConfig& config) {
  auto v = Violations(config);
  if (!v.empty()) throw ConfigurationError(v);
}

ScenarioConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(path + ": " + e.what());
  }
  return ParseConfig(j);
}

bool ApplySamplesOverride(ScenarioConfig& config, std::size_t samples) {
  switch (config.scenario) {
    case ScenarioKind::kStatsVerify: config.stats_verify.samples = samples; return true;
    case ScenarioKind::kAlgebraDemo: config.algebra_demo.trials = samples; return true;
    case ScenarioKind::kDefend: config.defend.mc_samples = samples; return true;
    case ScenarioKind::kAttack: config.attack.mc_samples = samples; return true;
    case ScenarioKind::kConcentrationTable: return false;
  }
  return false;
}

}  // namespace cns

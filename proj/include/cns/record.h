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

#ifndef CNS_RECORD_H_
#define CNS_RECORD_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cns/config.h"

namespace cns {

inline constexpr std::string_view kArtifactVersion = "1.0.0";

// Where a number comes from.
enum class Provenance { kPrintedFormula, kCorrectedFormula, kMonteCarlo, kExactEnumeration };

std::string_view ToString(Provenance p);
Provenance ParseProvenance(std::string_view s);

struct MetricRow {
  std::string name;
  double value = 0.0;
  std::optional<double> standard_error;
  Provenance provenance = Provenance::kExactEnumeration;

  bool operator==(const MetricRow&) const = default;
};

// One quoted number set against what the code computes.
struct LedgerEntry {
  std::string id;
  std::string claim;     // what the quoted figure measures
  std::string reported;  // the figure as quoted
  double reported_value = 0.0;
  double computed_value = 0.0;
  Provenance computed_provenance = Provenance::kExactEnumeration;
  std::string verdict;

  bool operator==(const LedgerEntry&) const = default;
};

// Plot-ready table; written as <name>.csv with a leading seed column.
struct DataTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool operator==(const DataTable&) const = default;
};

struct ResultRecord {
  std::string scenario;
  std::string scenario_id;
  std::string artifact_version{kArtifactVersion};
  std::uint64_t seed = 0;
  nlohmann::json config;  // fully resolved
  std::vector<MetricRow> metrics;
  std::vector<LedgerEntry> ledger;
  std::vector<DataTable> tables;
  double duration_seconds = 0.0;

  // Throws std::out_of_range when absent.
  const MetricRow& Metric(std::string_view name) const;
  bool HasMetric(std::string_view name) const;
};

// Stable identifier: scenario name plus a hash of the resolved config.
std::string ScenarioId(const ScenarioConfig& config);

nlohmann::json ToJson(const ResultRecord& r);
// Tables are not embedded in result.json; the returned record has none.
ResultRecord RecordFromJson(const nlohmann::json& j);
ResultRecord LoadRecordFile(const std::string& path);

// Record JSON with duration_seconds zeroed, for reproducibility checks.
nlohmann::json MaskedJson(const ResultRecord& r);

std::string MetricsCsv(const ResultRecord& r);
std::string TableCsv(const DataTable& t, std::uint64_t seed);

// Throws IoError unless `dir` exists (or can be created) and accepts a file.
void EnsureWritableDirectory(const std::string& dir);

// Writes result.json, metrics.csv, config.resolved.json and one CSV per table.
void WriteRecord(const ResultRecord& r, const std::string& dir);

// Shortest round-trip decimal form.
std::string FormatDouble(double x);

}  // namespace cns

#endif  // CNS_RECORD_H_

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

#include "cns/record.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cns/errors.h"
#include "cns/random.h"

namespace cns {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json NumberOrNull(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double NumberFrom(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

void WriteFile(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << text;
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view ToString(Provenance p) {
  switch (p) {
    case Provenance::kPrintedFormula: return "printed-formula";
    case Provenance::kCorrectedFormula: return "corrected-formula";
    case Provenance::kMonteCarlo: return "monte-carlo";
    case Provenance::kExactEnumeration: return "exact-enumeration";
  }
  return "?";
}

Provenance ParseProvenance(std::string_view s) {
  for (Provenance p : {Provenance::kPrintedFormula, Provenance::kCorrectedFormula,
                       Provenance::kMonteCarlo, Provenance::kExactEnumeration}) {
    if (ToString(p) == s) return p;
  }
  throw ValidationError("unknown provenance tag \"" + std::string(s) + "\"");
}

const MetricRow& ResultRecord::Metric(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return m;
  }
  throw std::out_of_range("no metric " + std::string(name));
}

bool ResultRecord::HasMetric(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return true;
  }
  return false;
}

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string ScenarioId(const ScenarioConfig& config) {
  json j = SerializeConfig(config);
  // Where results land and how many threads ran them do not change them.
  j.erase("output_dir");
  j.erase("threads");
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(j.dump())));
  return std::string(ToString(config.scenario)) + "-" + std::string(buf, 12);
}

json ToJson(const ResultRecord& r) {
  json metrics = json::array();
  for (const auto& m : r.metrics) {
    metrics.push_back({{"name", m.name},
                       {"value", NumberOrNull(m.value)},
                       {"standard_error", m.standard_error ? NumberOrNull(*m.standard_error)
                                                           : json(nullptr)},
                       {"provenance", std::string(ToString(m.provenance))}});
  }
  json ledger = json::array();
  for (const auto& e : r.ledger) {
    ledger.push_back({{"id", e.id},
                      {"claim", e.claim},
                      {"reported", e.reported},
                      {"reported_value", NumberOrNull(e.reported_value)},
                      {"computed_value", NumberOrNull(e.computed_value)},
                      {"computed_provenance", std::string(ToString(e.computed_provenance))},
                      {"verdict", e.verdict}});
  }
  json tables = json::array();
  for (const auto& t : r.tables) tables.push_back(t.name + ".csv");
  return {{"scenario", r.scenario},
          {"scenario_id", r.scenario_id},
          {"artifact_version", r.artifact_version},
          {"seed", r.seed},
          {"config", r.config},
          {"metrics", metrics},
          {"ledger", ledger},
          {"tables", tables},
          {"duration_seconds", r.duration_seconds}};
}

ResultRecord RecordFromJson(const json& j) {
  try {
    ResultRecord r;
    r.scenario = j.at("scenario").get<std::string>();
    r.scenario_id = j.at("scenario_id").get<std::string>();
    r.artifact_version = j.at("artifact_version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config = j.at("config");
    for (const auto& m : j.at("metrics")) {
      MetricRow row;
      row.name = m.at("name").get<std::string>();
      row.value = NumberFrom(m.at("value"));
      if (!m.at("standard_error").is_null()) row.standard_error = m.at("standard_error").get<double>();
      row.provenance = ParseProvenance(m.at("provenance").get<std::string>());
      r.metrics.push_back(std::move(row));
    }
    for (const auto& e : j.at("ledger")) {
      LedgerEntry le;
      le.id = e.at("id").get<std::string>();
      le.claim = e.at("claim").get<std::string>();
      le.reported = e.at("reported").get<std::string>();
      le.reported_value = NumberFrom(e.at("reported_value"));
      le.computed_value = NumberFrom(e.at("computed_value"));
      le.computed_provenance = ParseProvenance(e.at("computed_provenance").get<std::string>());
      le.verdict = e.at("verdict").get<std::string>();
      r.ledger.push_back(std::move(le));
    }
    r.duration_seconds = j.at("duration_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed result record: ") + e.what());
  }
}

ResultRecord LoadRecordFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return RecordFromJson(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

json MaskedJson(const ResultRecord& r) {
  json j = ToJson(r);
  j["duration_seconds"] = 0.0;
  return j;
}

std::string MetricsCsv(const ResultRecord& r) {
  std::ostringstream os;
  os << "seed,scenario_id,name,value,standard_error,provenance\n";
  for (const auto& m : r.metrics) {
    os << r.seed << ',' << r.scenario_id << ',' << CsvField(m.name) << ','
       << FormatDouble(m.value) << ','
       << (m.standard_error ? FormatDouble(*m.standard_error) : std::string()) << ','
       << ToString(m.provenance) << '\n';
  }
  return os.str();
}

std::string TableCsv(const DataTable& t, std::uint64_t seed) {
  std::ostringstream os;
  os << "seed";
  for (const auto& c : t.columns) os << ',' << CsvField(c);
  os << '\n';
  for (const auto& row : t.rows) {
    os << seed;
    for (double v : row) os << ',' << FormatDouble(v);
    os << '\n';
  }
  return os.str();
}

void EnsureWritableDirectory(const std::string& dir) {
  if (dir.empty()) throw IoError("output directory is empty");
  std::error_code ec;
  fs::path p(dir);
  if (fs::exists(p, ec) && !fs::is_directory(p, ec)) {
    throw IoError("output path " + dir + " exists and is not a directory");
  }
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  fs::path probe = p / ".cns-write-probe";
  {
    std::ofstream out(probe, std::ios::trunc);
    if (!out || !(out << "ok")) throw IoError("output directory " + dir + " is not writable");
  }
  fs::remove(probe, ec);
}

void WriteRecord(const ResultRecord& r, const std::string& dir) {
  EnsureWritableDirectory(dir);
  fs::path p(dir);
  WriteFile(p / "result.json", ToJson(r).dump(2) + "\n");
  WriteFile(p / "config.resolved.json", r.config.dump(2) + "\n");
  WriteFile(p / "metrics.csv", MetricsCsv(r));
  for (const auto& t : r.tables) WriteFile(p / (t.name + ".csv"), TableCsv(t, r.seed));
}

}  // namespace cns

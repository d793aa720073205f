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

#include "cns/ledger.h"

#include <sstream>

namespace cns {
namespace {

std::string Cell(std::string s) {
  for (char& c : s) {
    if (c == '|') c = '/';
    if (c == '\n') c = ' ';
  }
  return s;
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

LedgerReport EmitLedger(const std::vector<ResultRecord>& records) {
  LedgerReport report;
  for (const auto& r : records) {
    for (const auto& e : r.ledger) {
      LedgerTable* table = nullptr;
      for (auto& t : report.tables) {
        if (t.id == e.id) table = &t;
      }
      if (table == nullptr) {
        report.tables.push_back({e.id, e.claim, {}});
        table = &report.tables.back();
      }
      table->rows.push_back({r.scenario_id, r.seed, e});
    }
  }
  return report;
}

std::string LedgerReport::Markdown() const {
  if (tables.empty()) return "";
  std::ostringstream os;
  os << "# Discrepancy ledger\n";
  for (const auto& t : tables) {
    os << "\n## " << t.id << "\n\n" << Cell(t.claim) << "\n\n";
    os << "| scenario | seed | reported | reported value | computed value | computed by | verdict |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const auto& row : t.rows) {
      const LedgerEntry& e = row.entry;
      os << "| " << row.scenario_id << " | " << row.seed << " | " << Cell(e.reported) << " | "
         << FormatDouble(e.reported_value) << " | " << FormatDouble(e.computed_value) << " | "
         << ToString(e.computed_provenance) << " | " << Cell(e.verdict) << " |\n";
    }
  }
  return os.str();
}

std::string LedgerReport::Csv() const {
  std::ostringstream os;
  os << "seed,scenario_id,id,claim,reported,reported_value,computed_value,computed_by,verdict\n";
  for (const auto& t : tables) {
    for (const auto& row : t.rows) {
      const LedgerEntry& e = row.entry;
      os << row.seed << ',' << row.scenario_id << ',' << CsvField(e.id) << ','
         << CsvField(e.claim) << ',' << CsvField(e.reported) << ','
         << FormatDouble(e.reported_value) << ',' << FormatDouble(e.computed_value) << ','
         << ToString(e.computed_provenance) << ',' << CsvField(e.verdict) << '\n';
    }
  }
  return os.str();
}

}  // namespace cns

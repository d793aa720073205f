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

#ifndef CNS_LEDGER_H_
#define CNS_LEDGER_H_

#include <string>
#include <vector>

#include "cns/record.h"

namespace cns {

struct LedgerRow {
  std::string scenario_id;
  std::uint64_t seed = 0;
  LedgerEntry entry;
};

// Rows sharing one entry id.
struct LedgerTable {
  std::string id;
  std::string claim;
  std::vector<LedgerRow> rows;
};

struct LedgerReport {
  std::vector<LedgerTable> tables;  // ordered by first appearance
  bool empty() const { return tables.empty(); }
  std::string Markdown() const;
  std::string Csv() const;
};

LedgerReport EmitLedger(const std::vector<ResultRecord>& records);

}  // namespace cns

#endif  // CNS_LEDGER_H_

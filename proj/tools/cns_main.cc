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

// Command-line runner for the scenario harness.
//
//   cns stats-verify --seed 42 --out results/stats
//   cns defend --config defend.json --threads 8
//   cns ledger results/*/result.json --out results/ledger
//
// Exit status: 0 on success, 2 on validation errors, 1 on runtime errors.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cns/config.h"
#include "cns/errors.h"
#include "cns/ledger.h"
#include "cns/record.h"
#include "cns/scenarios.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 1;

struct RunFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::size_t> threads;
  std::optional<std::size_t> samples;
};

void AddRunFlags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_path, "scenario config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "master seed; overrides the config");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--threads", f.threads, "worker threads (0: all hardware threads)");
  cmd->add_option("--samples", f.samples, "override the scenario's main sample count");
}

int RunScenarioCommand(cns::ScenarioKind kind, const RunFlags& f) {
  cns::ScenarioConfig config;
  if (!f.config_path.empty()) {
    config = cns::LoadConfigFile(f.config_path);
    if (config.scenario != kind) {
      throw cns::ConfigurationError("scenario: config is for \"" +
                                    std::string(cns::ToString(config.scenario)) +
                                    "\" but the subcommand is \"" +
                                    std::string(cns::ToString(kind)) + "\"");
    }
    if (f.seed) config.seed = *f.seed;
  } else {
    if (!f.seed) {
      throw cns::ConfigurationError("seed: missing (pass --seed or a config with a seed)");
    }
    config = cns::DefaultConfig(kind, *f.seed);
  }
  if (f.threads) config.threads = *f.threads;
  if (f.samples && !cns::ApplySamplesOverride(config, *f.samples)) {
    std::cerr << "note: --samples has no effect on " << cns::ToString(kind) << "\n";
  }
  if (!f.out.empty()) config.output_dir = f.out;
  if (config.output_dir.empty()) {
    config.output_dir = "cns-out/" + std::string(cns::ToString(kind));
  }
  cns::ValidateConfig(config);

  cns::ResultRecord r = cns::RunScenarioToDirectory(config, config.output_dir);
  std::cout << r.scenario_id << ": " << r.metrics.size() << " metrics, " << r.ledger.size()
            << " ledger rows, " << r.tables.size() << " tables in " << config.output_dir
            << " (" << r.duration_seconds << " s)\n";
  return 0;
}

int RunLedgerCommand(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<cns::ResultRecord> records;
  for (const auto& in : inputs) {
    std::filesystem::path p(in);
    if (std::filesystem::is_directory(p)) p /= "result.json";
    records.push_back(cns::LoadRecordFile(p.string()));
  }
  cns::LedgerReport report = cns::EmitLedger(records);
  if (!out.empty()) {
    cns::EnsureWritableDirectory(out);
    std::ofstream md(std::filesystem::path(out) / "ledger.md");
    std::ofstream csv(std::filesystem::path(out) / "ledger.csv");
    md << report.Markdown();
    csv << report.Csv();
    if (!md || !csv) throw cns::IoError("cannot write ledger to " + out);
  }
  std::cout << report.Markdown();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cognitive neurosecurity scenario runner"};
  app.require_subcommand(1);

  struct Entry {
    cns::ScenarioKind kind;
    const char* help;
  };
  const Entry entries[] = {
      {cns::ScenarioKind::kStatsVerify, "random-state fidelity and distance statistics"},
      {cns::ScenarioKind::kConcentrationTable, "exact measurement concentration intervals"},
      {cns::ScenarioKind::kAlgebraDemo, "hypervector algebra laws and recovery"},
      {cns::ScenarioKind::kDefend, "defensive noise optimization on the subset scenario"},
      {cns::ScenarioKind::kAttack, "alteration attack optimization demos"},
  };
  std::vector<RunFlags> flags(std::size(entries));
  std::vector<CLI::App*> commands;
  for (std::size_t i = 0; i < std::size(entries); ++i) {
    CLI::App* cmd =
        app.add_subcommand(std::string(cns::ToString(entries[i].kind)), entries[i].help);
    AddRunFlags(cmd, flags[i]);
    commands.push_back(cmd);
  }
  std::vector<std::string> ledger_inputs;
  std::string ledger_out;
  CLI::App* ledger = app.add_subcommand("ledger", "merge result records into a discrepancy ledger");
  ledger->add_option("records", ledger_inputs, "result.json files or result directories");
  ledger->add_option("--out", ledger_out, "write ledger.md and ledger.csv here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (ledger->parsed()) return RunLedgerCommand(ledger_inputs, ledger_out);
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (commands[i]->parsed()) return RunScenarioCommand(entries[i].kind, flags[i]);
    }
  } catch (const cns::ConfigurationError& e) {
    std::cerr << "configuration error:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
    return kExitValidation;
  } catch (const cns::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}

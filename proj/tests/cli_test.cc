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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

fs::path Scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("cns_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Exit status of `cns <args>`, output discarded.
int Cns(const std::string& args) {
  std::string cmd = std::string(CNS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void WriteJson(const fs::path& p, const nlohmann::json& j) { std::ofstream(p) << j.dump(2); }

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Cns(""), 2);
  EXPECT_EQ(Cns("no-such-command"), 2);
  EXPECT_EQ(Cns("concentration-table --seed notanumber"), 2);
  EXPECT_EQ(Cns("concentration-table --config /nonexistent.json"), 2);
  EXPECT_EQ(Cns("--help"), 0);
}

TEST(CliTest, MissingSeedExitsTwo) {
  fs::path dir = Scratch("noseed");
  EXPECT_EQ(Cns("concentration-table --out " + (dir / "out").string()), 2);
  EXPECT_FALSE(fs::exists(dir / "out" / "result.json"));
}

TEST(CliTest, BadConfigsExitTwo) {
  fs::path dir = Scratch("badcfg");
  WriteJson(dir / "unknown.json",
            {{"scenario", "concentration-table"}, {"seed", 1}, {"schema_version", 1}, {"x", 1}});
  WriteJson(dir / "noseed.json", {{"scenario", "concentration-table"}, {"schema_version", 1}});
  WriteJson(dir / "attack.json", {{"scenario", "attack"}, {"seed", 1}, {"schema_version", 1}});
  std::ofstream(dir / "broken.json") << "{";
  for (const char* f : {"unknown.json", "noseed.json", "attack.json", "broken.json"}) {
    EXPECT_EQ(Cns("concentration-table --config " + (dir / f).string() + " --out " +
                  (dir / "out").string()),
              2)
        << f;
  }
}

TEST(CliTest, RunWritesOutputsAndLedger) {
  fs::path dir = Scratch("run");
  WriteJson(dir / "c.json", {{"scenario", "concentration-table"},
                             {"seed", 4},
                             {"schema_version", 1},
                             {"concentration_table",
                              {{"n_list", {300}}, {"tail_scan_n", 300}, {"convolution_n", 20}}}});
  ASSERT_EQ(Cns("concentration-table --config " + (dir / "c.json").string() + " --out " +
                (dir / "a").string()),
            0);
  for (const char* f : {"result.json", "metrics.csv", "config.resolved.json"}) {
    EXPECT_TRUE(fs::exists(dir / "a" / f)) << f;
  }
  ASSERT_EQ(Cns("ledger " + (dir / "a").string() + " --out " + (dir / "ledger").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "ledger" / "ledger.md"));
  EXPECT_TRUE(fs::exists(dir / "ledger" / "ledger.csv"));
  EXPECT_GT(fs::file_size(dir / "ledger" / "ledger.md"), 0u);
  // Missing record is a runtime error.
  EXPECT_EQ(Cns("ledger " + (dir / "nothing").string()), 1);
}

TEST(CliTest, UnwritableOutputExitsOne) {
  fs::path dir = Scratch("blocked");
  std::ofstream(dir / "file") << "x";
  EXPECT_EQ(Cns("concentration-table --seed 1 --out " + (dir / "file" / "out").string()), 1);
}

TEST(CliTest, SeedFlagOverridesConfig) {
  fs::path dir = Scratch("override");
  WriteJson(dir / "c.json", {{"scenario", "concentration-table"},
                             {"seed", 4},
                             {"schema_version", 1},
                             {"concentration_table",
                              {{"n_list", {100}}, {"tail_scan_n", 100}, {"convolution_n", 10}}}});
  ASSERT_EQ(Cns("concentration-table --config " + (dir / "c.json").string() +
                " --seed 77 --out " + (dir / "o").string()),
            0);
  std::ifstream in(dir / "o" / "result.json");
  nlohmann::json j = nlohmann::json::parse(in);
  EXPECT_EQ(j["seed"], 77);
}

}  // namespace

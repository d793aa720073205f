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

// Frozen-seed baselines for the shipped demo scenarios. Bounds, not exact
// values, so a change of summation order does not trip them; the exact
// reproducibility check lives in the acceptance run.

#include <gtest/gtest.h>

#include "cns/config.h"
#include "cns/record.h"
#include "cns/scenarios.h"

namespace cns {
namespace {

TEST(AttackRegressionTest, Seed42) {
  ResultRecord r = RunScenario(DefaultConfig(ScenarioKind::kAttack, 42));
  const std::string s = "attack.SMOA.lambda=0.5.", d = "attack.DMOA.lambda=0.5.";
  EXPECT_GT(r.Metric(s + "attainment").value, 0.9);
  EXPECT_LT(r.Metric(s + "detectability").value, 0.3);
  EXPECT_GT(r.Metric(s + "attainment").value, r.Metric(s + "attainment_without_noise").value);
  EXPECT_GE(r.Metric(d + "attainment").value, 0.8);
  EXPECT_LT(r.Metric(d + "attainment_without_noise").value, 0.2);
  EXPECT_LE(r.Metric(s + "evaluations").value, 1000);
  EXPECT_LE(r.Metric(d + "evaluations").value, 500);
}

class SmoaSeedTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(SmoaSeedTest, ReadoutFlipIsReachedQuietly) {
  ScenarioConfig c = DefaultConfig(ScenarioKind::kAttack, GetParam());
  c.attack.dmoa.enabled = false;
  ResultRecord r = RunScenario(c);
  EXPECT_GT(r.Metric("attack.SMOA.lambda=0.5.attainment").value, 0.9);
  EXPECT_LT(r.Metric("attack.SMOA.lambda=0.5.detectability").value, 0.3);
  EXPECT_FALSE(r.HasMetric("attack.DMOA.lambda=0.5.attainment"));
}

INSTANTIATE_TEST_SUITE_P(Seeds, SmoaSeedTest, ::testing::Values(1, 7, 2026));

TEST(DefendRegressionTest, SmonSeed42) {
  ScenarioConfig c = DefaultConfig(ScenarioKind::kDefend, 42);
  c.defend.variants = {"SMON"};
  ResultRecord r = RunScenario(c);
  const std::string b = "defend.SMON.lambda=1.";
  EXPECT_EQ(r.Metric(b + "constraint_satisfied").value, 1.0);
  EXPECT_GE(r.Metric(b + "slack").value, 0.0);
  EXPECT_GE(r.Metric(b + "energy_fraction_on_subset").value, 0.9);
  EXPECT_LE(r.Metric(b + "total_variance").value, 5 * 10.0);
  EXPECT_NEAR(r.Metric(b + "objective").value,
              r.Metric(b + "term").value - r.Metric(b + "penalty").value, 1e-15);
  EXPECT_EQ(r.tables.size(), 2u);
}

TEST(DefendRegressionTest, ModelsAreSeedDeterministic) {
  DefendParams p;
  SubsetScenario a = BuildSubsetScenario(p, 42), b = BuildSubsetScenario(p, 42);
  ASSERT_EQ(a.defenders.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.defenders.members()[i], b.defenders.members()[i]);
  EXPECT_EQ(a.truth, b.truth);
  EXPECT_EQ(a.baseline, b.baseline);
  SubsetScenario c = BuildSubsetScenario(p, 43);
  EXPECT_FALSE(c.defenders.members()[0] == a.defenders.members()[0]);
}

}  // namespace
}  // namespace cns

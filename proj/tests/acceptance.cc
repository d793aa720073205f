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

// End-to-end acceptance run. Each shipped scenario runs at seed 42 with its
// default config, then again for the determinism check. One PASS/FAIL line
// per criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cns/config.h"
#include "cns/record.h"
#include "cns/scenarios.h"
#include "cns/state_statistics.h"

namespace {

using cns::ResultRecord;
using cns::ScenarioKind;

constexpr std::uint64_t kSeed = 42;

struct Verdict {
  bool pass = true;
  std::string detail;

  // Records one clause.
  void Check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string Fmt(double x, const char* f = "%.4g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double M(const ResultRecord& r, const std::string& name) { return r.Metric(name).value; }

bool HasLedger(const ResultRecord& r, const std::string& id) {
  for (const auto& e : r.ledger) {
    if (e.id == id && !e.verdict.empty()) return true;
  }
  return false;
}

Verdict FidelityLaw(const ResultRecord& s) {
  Verdict v;
  double mean = M(s, "fidelity.D=16.mean");
  double sup = M(s, "fidelity.D=16.cdf_sup_deviation.corrected");
  v.Check(std::abs(mean - 0.0625) <= 0.002, "mean " + Fmt(mean, "%.6f") + " vs 0.0625 +- 0.002");
  v.Check(sup < 0.01, "sup deviation " + Fmt(sup) + " < 0.01");
  v.Check(s.config["stats_verify"]["samples"] == 100000, "1e5 samples");
  v.Check(s.duration_seconds < 10.0, "whole stats run " + Fmt(s.duration_seconds, "%.2f") + " s");
  return v;
}

Verdict BuresAdjudication(const ResultRecord& s) {
  Verdict v;
  double pr = M(s, "bures.D=100.pr_below.v=0.95");
  double printed = M(s, "bures.D=100.printed_tail.v=0.95");
  double corrected = M(s, "bures.D=100.pr_below_corrected.v=0.95");
  v.Check(std::abs(pr - corrected) <= 0.01,
          "Pr[b<0.95] " + Fmt(pr, "%.5f") + " within 0.01 of corrected " + Fmt(corrected, "%.5f"));
  v.Check(std::abs(pr - printed) > 0.01, "rejects printed " + Fmt(printed));
  v.Check(M(s, "bures.D=100.adjudication.v=0.95") == 1.0, "verdict corrected");
  v.Check(HasLedger(s, "bures-proximity-D=100-v=0.95"), "ledger row");
  v.Check(s.duration_seconds < 60.0, Fmt(s.duration_seconds, "%.2f") + " s");
  return v;
}

Verdict PrintedTails() {
  Verdict v;
  auto start = std::chrono::steady_clock::now();
  struct Case {
    double v;
    std::size_t d;
    double mantissa;
    int exponent;
  };
  const Case cases[] = {{0.95, 100, 3.9, -3}, {0.95, 500, 1.7, -5}, {0.5, 100, 2.9, -38},
                        {0.5, 500, 1.4, -182}};
  for (const Case& c : cases) {
    cns::LogProbability t = cns::PrintedBuresTail(c.v, c.d);
    double l10 = t.Log10();
    int e = static_cast<int>(std::floor(l10));
    double mant = std::pow(10.0, l10 - e);
    bool ok = e == c.exponent && std::abs(mant - c.mantissa) < 0.05 + 1e-12;
    v.Check(ok, Fmt(mant, "%.2f") + "e" + std::to_string(e));
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.Check(secs < 1.0, Fmt(secs, "%.2e") + " s");
  return v;
}

Verdict Concentration(const ResultRecord& c) {
  Verdict v;
  const std::string n = "concentration.n=1000.";
  double rp = M(c, n + "random-pair.outside_quoted_interval");
  double tv = M(c, n + "true-vs-noisy.q=0.25.outside_quoted_interval");
  v.Check(rp >= 1e-7 && rp < 1e-5, "outside [0.425,0.575] " + Fmt(rp));
  v.Check(tv >= 1e-7 && tv < 1e-5, "outside [0.185,0.315] " + Fmt(tv));
  v.Check(M(c, n + "random-pair.mass=1-2e-06.lo") == 0.425 &&
              M(c, n + "random-pair.mass=1-2e-06.hi") == 0.575,
          "random-pair interval");
  v.Check(M(c, n + "true-vs-noisy.q=0.25.mass=1-2e-06.lo") == 0.185 &&
              M(c, n + "true-vs-noisy.q=0.25.mass=1-2e-06.hi") == 0.315,
          "q=0.25 interval");
  double g = M(c, "gaussian_tail.n=1000.r=0.5.max_error.continuity");
  v.Check(g < 1e-3, "Gaussian tail error " + Fmt(g));
  v.Check(c.duration_seconds < 5.0, Fmt(c.duration_seconds, "%.2f") + " s");
  return v;
}

Verdict Divergence(const ResultRecord& s) {
  Verdict v;
  double worst_diag = 0.0, worst_excess = 0.0, violations = 0.0;
  bool full = true;
  for (int d : {2, 4, 8}) {
    const std::string ds = std::to_string(d);
    worst_diag = std::max(worst_diag, M(s, "diagonal.D=" + ds + ".max_abs_difference"));
    violations += M(s, "roga.D=" + ds + ".violations");
    worst_excess = std::max(worst_excess, M(s, "roga.D=" + ds + ".max_excess"));
    full = full && M(s, "roga.D=" + ds + ".pairs") == 10000;
  }
  v.Check(full, "1e4 pairs per D");
  v.Check(worst_diag < 1e-9, "diagonal |qjsd - jsd| " + Fmt(worst_diag));
  v.Check(violations == 0, "Roga violations " + Fmt(violations, "%.0f") + " (max excess " +
                               Fmt(worst_excess) + ")");
  v.Check(s.duration_seconds < 60.0, Fmt(s.duration_seconds, "%.2f") + " s");
  return v;
}

Verdict Algebra(const ResultRecord& a) {
  Verdict v;
  double inv = M(a, "properties.inversion_max_error");
  double perm = M(a, "properties.permutation_failures");
  double rate = M(a, "recovery.n=1000.bundle_rate.projective");
  v.Check(M(a, "properties.cases") == 10000, "1e4 cases");
  v.Check(inv <= 1e-12, "inversion error " + Fmt(inv));
  v.Check(perm == 0, "permutation failures " + Fmt(perm, "%.0f"));
  v.Check(rate >= 0.95, "bundle recovery rate " + Fmt(rate));
  v.Check(a.duration_seconds < 30.0, Fmt(a.duration_seconds, "%.2f") + " s");
  return v;
}

Verdict Separation(const ResultRecord& d) {
  Verdict v;
  const std::string smon = "defend.SMON.lambda=1.", sion = "defend.SION.lambda=1.";
  double vs = M(d, smon + "total_variance"), vi = M(d, sion + "total_variance");
  double frac = M(d, smon + "energy_fraction_on_subset");
  v.Check(M(d, smon + "constraint_satisfied") == 1.0, "SMON reaches mu=0.3");
  v.Check(M(d, sion + "constraint_satisfied") == 1.0, "SION reaches mu=0.3");
  v.Check(M(d, smon + "evaluations") <= 2000 && M(d, sion + "evaluations") <= 2000,
          "budget 2000");
  v.Check(vs < vi, "variance SMON " + Fmt(vs) + " < SION " + Fmt(vi));
  v.Check(frac >= 0.9, "SMON energy on subset " + Fmt(frac));
  v.Check(d.duration_seconds < 300.0, Fmt(d.duration_seconds, "%.1f") + " s");
  return v;
}

Verdict Determinism(const std::vector<ResultRecord>& first,
                    const std::vector<ResultRecord>& second, double total_seconds) {
  Verdict v;
  for (std::size_t i = 0; i < first.size(); ++i) {
    bool same = cns::MaskedJson(first[i]) == cns::MaskedJson(second[i]) &&
                first[i].tables == second[i].tables;
    v.Check(same, first[i].scenario);
  }
  v.Check(total_seconds < 900.0, "suite " + Fmt(total_seconds, "%.1f") + " s");
  return v;
}

}  // namespace

int main() {
  const ScenarioKind kinds[] = {ScenarioKind::kStatsVerify, ScenarioKind::kConcentrationTable,
                                ScenarioKind::kAlgebraDemo, ScenarioKind::kDefend,
                                ScenarioKind::kAttack};
  auto start = std::chrono::steady_clock::now();
  std::vector<ResultRecord> first, second;
  for (ScenarioKind k : kinds) first.push_back(cns::RunScenario(cns::DefaultConfig(k, kSeed)));
  for (ScenarioKind k : kinds) second.push_back(cns::RunScenario(cns::DefaultConfig(k, kSeed)));
  double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const ResultRecord& stats = first[0];
  const ResultRecord& conc = first[1];
  const ResultRecord& alg = first[2];
  const ResultRecord& def = first[3];

  struct Line {
    const char* name;
    Verdict verdict;
  };
  const Line lines[] = {
      {"fidelity-law", FidelityLaw(stats)},
      {"bures-adjudication", BuresAdjudication(stats)},
      {"printed-tails", PrintedTails()},
      {"measurement-concentration", Concentration(conc)},
      {"divergence-suite", Divergence(stats)},
      {"algebra-laws", Algebra(alg)},
      {"smon-sion-separation", Separation(def)},
      {"end-to-end-determinism", Determinism(first, second, total)},
  };
  bool all = true;
  int index = 1;
  for (const Line& l : lines) {
    std::printf("%s %d %s: %s\n", l.verdict.pass ? "PASS" : "FAIL", index++, l.name,
                l.verdict.detail.c_str());
    all = all && l.verdict.pass;
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}

// Copyright 2026 The qrecon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace qrecon::cli {
namespace {

using nlohmann::json;

json base(const char* kind) { return json{{"version", 1}, {"kind", kind}}; }

void expectConfigError(const json& j) { EXPECT_THROW(parseConfig(j), ConfigError) << j.dump(); }

const Check* find(const RunReport& r, const std::string& id) {
  for (const auto& c : r.checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

TEST(Config, RequiresVersionAndKnownKind) {
  expectConfigError(json{{"kind", "bench"}});
  expectConfigError(json{{"version", 2}, {"kind", "bench"}});
  expectConfigError(json{{"version", 1}});
  expectConfigError(json{{"version", 1}, {"kind", "plot"}});
  expectConfigError(json::array());
}

TEST(Config, RejectsUnknownFields) {
  auto j = base("metric-check");
  j["samplez"] = 10;
  expectConfigError(j);
  auto t = base("tomography");
  t["levels"] = 3;  // valid elsewhere, not here
  expectConfigError(t);
  auto e = base("tomography");
  e["truth"] = {{"extended", {{"axis", "q"}, {"theta", 1.0}, {"alpha", 0.0}, {"beta", 1}}}};
  expectConfigError(e);
}

TEST(Config, ValidatesValues) {
  auto zero = base("tomography");
  zero["trials"] = 0;
  expectConfigError(zero);
  auto tol = base("metric-check");
  tol["tolerance"] = 0.0;
  expectConfigError(tol);
  auto neg = base("fft-derive");
  neg["tolerance"] = -1e-3;
  expectConfigError(neg);
  auto lv = base("partition-audit");
  lv["levels"] = 5;
  expectConfigError(lv);
  auto big = base("fft-derive");
  big["levels"] = 13;
  expectConfigError(big);
  auto axis = base("tomography");
  axis["observables"] = {"q", "x"};
  expectConfigError(axis);
  auto bloch = base("tomography");
  bloch["truth"] = {{"bloch", {1.0, 1.0, 0.0}}};
  expectConfigError(bloch);
  auto sizes = base("bench");
  sizes["sizes"] = {2, 6};
  expectConfigError(sizes);
  auto seed = base("bench");
  seed["seed"] = -4;
  expectConfigError(seed);
}

TEST(Config, EchoRoundTrips) {
  auto j = base("tomography");
  j["truth"] = {{"bloch", {0.0, 0.6, 0.8}}};
  j["observables"] = {"r", "q"};
  j["seed"] = 12;
  const auto c = parseConfig(j);
  EXPECT_EQ(c.seed, 12u);
  EXPECT_EQ(c.tomography.observables, (std::vector<Axis>{Axis::r, Axis::q}));
  const auto again = parseConfig(toJson(c));
  EXPECT_EQ(toJson(again), toJson(c));
}

TEST(RunTomography, RebitParityAndDeterminism) {
  auto cfg = defaultConfig(Kind::tomography);
  cfg.seed = 99;
  const auto a = runTomography(cfg);
  EXPECT_TRUE(a.pass()) << toJson(a).dump();
  auto ja = toJson(a), jb = toJson(runTomography(cfg));
  ja.erase("wallSeconds");
  jb.erase("wallSeconds");
  EXPECT_EQ(ja, jb);
  EXPECT_EQ(ja.at("measurements").at("observables").size(), 2u);
}

TEST(RunTomography, CardinalPointComparesTwo) {
  auto j = base("tomography");
  j["truth"] = {{"bloch", {0.0, 0.0, 1.0}}};
  j["observables"] = {"q", "p", "r"};
  j["trials"] = 10000;
  j["replicas"] = 2000;
  j["parityTolerance"] = 0.3;
  const auto r = runTomography(parseConfig(j));
  const auto& obs = r.measurements.at("observables");
  EXPECT_TRUE(obs[2].at("boundary").get<bool>());
  EXPECT_EQ(find(r, "precision-parity")->detail.at("compared"), 2);
}

TEST(RunMetricCheck, AllChecksPass) {
  auto j = base("metric-check");
  j["samples"] = 2000;
  j["chartPoints"] = 200;
  const auto r = runMetricCheck(parseConfig(j));
  EXPECT_TRUE(r.pass()) << toJson(r).dump(2);
  EXPECT_EQ(r.checks.size(), 6u);
}

TEST(RunFftDerive, SmallLevels) {
  auto j = base("fft-derive");
  j["levels"] = 1;
  const auto r1 = runFftDerive(parseConfig(j));
  EXPECT_TRUE(r1.pass());
  ASSERT_NE(find(r1, "hadamard-identity"), nullptr);

  j["levels"] = 3;
  const auto r3 = runFftDerive(parseConfig(j));
  EXPECT_TRUE(r3.pass()) << toJson(r3).dump(2);
  EXPECT_LT(r3.measurements.at("maxEntryDeviationForward").get<double>(), 1e-11);
  EXPECT_NE(find(r3, "danielson-lanczos-cell"), nullptr);
}

TEST(RunPartitionAudit, CountsForTwoLevels) {
  auto j = base("partition-audit");
  j["levels"] = 2;
  const auto r = runPartitionAudit(parseConfig(j));
  EXPECT_TRUE(r.pass());
  const auto& c1 = find(r, "shift-invariance-c1")->detail;
  EXPECT_EQ(c1.at("candidates"), 3);
  EXPECT_EQ(c1.at("invariant"), 1);
}

TEST(RunBench, TinySizeHasNoAssertion) {
  auto j = base("bench");
  j["sizes"] = {2, 8};
  j["repetitions"] = 3;
  const auto r = runBench(parseConfig(j));
  EXPECT_TRUE(r.checks.empty());
  EXPECT_TRUE(r.pass());
  ASSERT_EQ(r.extraFiles.size(), 1u);
  EXPECT_EQ(r.extraFiles[0].first, "bench.csv");
  EXPECT_EQ(r.extraFiles[0].second.substr(0, 32), "N,dense_ns,butterfly_ns,speedup\n");
}

TEST(WriteReport, SelectsFormats) {
  const auto dir = std::filesystem::temp_directory_path() / "qrecon_cli_test";
  std::filesystem::remove_all(dir);
  auto cfg = defaultConfig(Kind::partitionAudit);
  cfg.partitionAudit.levels = 1;
  const auto r = runPartitionAudit(cfg);
  const auto written = writeReport(r, dir.string(), OutputSelection{true, false});
  ASSERT_EQ(written.size(), 1u);
  std::ifstream in(dir / "report.json");
  const auto j = json::parse(in);
  EXPECT_EQ(j.at("kind"), "partition-audit");
  EXPECT_TRUE(j.at("pass").get<bool>());
  for (const auto& c : j.at("checks")) {
    EXPECT_TRUE(c.contains("tolerance"));
    EXPECT_TRUE(c.contains("measured"));
  }
  EXPECT_FALSE(std::filesystem::exists(dir / "report.csv"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace qrecon::cli

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

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

using namespace qrecon::cli;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool json = false;
  bool csv = false;
};

void addCommon(CLI::App* cmd, Options& o, bool configRequired) {
  auto* c = cmd->add_option("--config", o.config, "JSON experiment config");
  if (configRequired) c->required();
  cmd->add_option("--seed", o.seed, "master seed (overrides the config)");
  cmd->add_option("--out", o.out, "output directory (default: config 'out' or .)");
  cmd->add_flag("--json", o.json, "write report.json (default: both formats)");
  cmd->add_flag("--csv", o.csv, "write report.csv (default: both formats)");
}

int execute(std::optional<Kind> expected, const Options& o) {
  ExperimentConfig cfg;
  try {
    cfg = o.config.empty() ? defaultConfig(*expected) : loadConfig(o.config);
    if (expected && cfg.kind != *expected) {
      throw ConfigError("config kind '" + toString(cfg.kind) + "' does not match subcommand '" +
                        toString(*expected) + "'");
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (o.seed) cfg.seed = *o.seed;

  RunReport report;
  try {
    report = runExperiment(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    // domain violations inside the library are parameter problems
    std::cerr << "error: " << e.what() << " (seed=" << cfg.seed << ")\n";
    return kExitConfig;
  }

  OutputSelection sel;
  if (o.json || o.csv) sel = OutputSelection{o.json, o.csv};
  const std::string dir = !o.out.empty() ? o.out : cfg.out.value_or(".");
  try {
    for (const auto& path : writeReport(report, dir, sel)) std::cout << "wrote " << path << '\n';
  } catch (const ConfigError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitConfig;
  }
  std::cout << summary(report);
  if (!report.pass()) {
    std::cerr << "checks failed; replay with --seed " << cfg.seed << '\n';
    return kExitCheckFailed;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qrecon: state-reconstruction experiments and verification suites"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qrecon 0.1.0");

  Options opts;
  std::optional<Kind> kind;
  const auto sub = [&](const char* name, const char* help, std::optional<Kind> k) {
    auto* cmd = app.add_subcommand(name, help);
    addCommon(cmd, opts, !k.has_value());
    cmd->callback([&kind, k] { kind = k; });
  };
  sub("tomography", "simulated repeated-measurement tomography and precision parity", Kind::tomography);
  sub("metric-check", "extended Fisher vs Fubini-Study metric suite", Kind::metricCheck);
  sub("fft-derive", "derive twiddles from the shift recursion and compare with the DFT", Kind::fftDerive);
  sub("partition-audit", "exhaustive shift-invariance audit of equal-size partitions", Kind::partitionAudit);
  sub("bench", "dense matrix vs butterfly timing", Kind::bench);
  sub("run", "run whatever kind the config names", std::nullopt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }
  return execute(kind, opts);
}

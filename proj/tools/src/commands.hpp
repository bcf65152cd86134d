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

#pragma once

#include <string>

#include "config.hpp"
#include "report.hpp"

namespace qrecon::cli {

RunReport runTomography(const ExperimentConfig& cfg);
RunReport runMetricCheck(const ExperimentConfig& cfg);
RunReport runFftDerive(const ExperimentConfig& cfg);
RunReport runPartitionAudit(const ExperimentConfig& cfg);
RunReport runBench(const ExperimentConfig& cfg);

/// Dispatches on cfg.kind.
RunReport runExperiment(const ExperimentConfig& cfg);

struct OutputSelection {
  bool json = true;
  bool csv = true;
};

/// Writes report.json / report.csv and any extra files into `dir`,
/// creating it if needed. Returns the paths written.
std::vector<std::string> writeReport(const RunReport& r, const std::string& dir, OutputSelection sel);

}  // namespace qrecon::cli

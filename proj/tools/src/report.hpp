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
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace qrecon::cli {

enum class Relation { below, atLeast };

struct Check {
  std::string id;
  double measured = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::below;
  bool pass = false;
  nlohmann::json detail;  // worst case or context; may be null
};

struct RunReport {
  ExperimentConfig config;
  std::vector<Check> checks;
  nlohmann::json measurements = nlohmann::json::object();
  double wallSeconds = 0.0;
  /// Replaces the check table in report.csv when set.
  std::string csvOverride;
  /// Additional files written next to the report, as (name, contents).
  std::vector<std::pair<std::string, std::string>> extraFiles;

  /// measured < tolerance (below) or measured >= tolerance (atLeast).
  Check& add(std::string id, double measured, double tolerance, Relation rel = Relation::below,
             nlohmann::json detail = nullptr);
  void addFlag(std::string id, bool ok, nlohmann::json detail = nullptr);
  bool pass() const;
};

nlohmann::json toJson(const RunReport& r);
std::string toCsv(const RunReport& r);
/// One line per check, for the terminal.
std::string summary(const RunReport& r);

}  // namespace qrecon::cli

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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qrecon/manifolds.hpp"

namespace qrecon::cli {

/// Bad config file or flag value; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kConfigVersion = 1;

enum class Kind { tomography, metricCheck, fftDerive, partitionAudit, bench };

std::string toString(Kind k);
Kind kindFromString(const std::string& s);

struct TomographyConfig {
  std::optional<double> rebitThetaQ;
  std::optional<BlochPoint> bloch;
  std::optional<ExtendedCoords> extended;
  std::vector<Axis> observables{Axis::q, Axis::p};
  std::uint64_t trials = 100000;
  std::uint64_t replicas = 40000;
  double parityTolerance = 0.05;
};

struct MetricCheckConfig {
  int levels = 4;
  std::uint64_t samples = 10000;
  std::uint64_t chartPoints = 1000;
  double tolerance = 1e-10;
};

struct FftDeriveConfig {
  int levels = 3;
  double tolerance = 1e-11;
};

struct PartitionAuditConfig {
  int levels = 3;
};

struct BenchConfig {
  std::vector<std::uint64_t> sizes{2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  int repetitions = 20;
  double minSpeedup = 10.0;
  std::uint64_t assertFrom = 4096;
};

struct ExperimentConfig {
  Kind kind = Kind::tomography;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
  TomographyConfig tomography;
  MetricCheckConfig metricCheck;
  FftDeriveConfig fftDerive;
  PartitionAuditConfig partitionAudit;
  BenchConfig bench;
};

/// Defaults for a kind, as used when a subcommand runs without --config.
ExperimentConfig defaultConfig(Kind kind);

/// Strict parse: `version` and `kind` are required, unknown keys are errors,
/// tolerances must be positive. Throws ConfigError.
ExperimentConfig parseConfig(const nlohmann::json& j);
ExperimentConfig loadConfig(const std::string& path);

/// Canonical JSON echo of the parsed config, with defaults filled in.
nlohmann::json toJson(const ExperimentConfig& c);

}  // namespace qrecon::cli

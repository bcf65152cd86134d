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
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qrecon/manifolds.hpp"
#include "qrecon/state_vector.hpp"

namespace qrecon {

struct ObservablePlan {
  Axis axis = Axis::q;
  std::uint64_t trials = 0;  // M per replica
};

struct TomographyPlan {
  std::vector<ObservablePlan> observables;
  std::uint64_t replicas = 200;
  /// Allowed relative spread of the per-measurement precision across
  /// non-boundary observables.
  double parityTolerance = 0.05;
};

struct ObservableResult {
  Axis axis = Axis::q;
  std::uint64_t trials = 0;
  double thetaTrue = 0.0;
  double thetaHat = 0.0;  // mean over replicas
  double varHat = 0.0;    // unbiased sample variance over replicas
  double precisionPerMeasurement = 0.0;  // 1 / (M varHat); 0 at a boundary
  bool boundary = false;  // outcome deterministic, variance identically 0
};

struct TomographyReport {
  std::uint64_t seed = 0;
  std::uint64_t replicas = 0;
  BlochPoint truth;
  std::vector<ObservableResult> observables;
  double parityTolerance = 0.0;
  double parityDeviation = 0.0;  // (max - min) / mean over compared observables
  int compared = 0;
  bool pass = false;
};

/// rho_nu(0) = (1 + S_nu) / 2 for each planned observable, estimated from
/// independent replicas. Replicas may run in parallel; the report does not
/// depend on the worker count. Throws DomainError on an empty plan or a
/// zero trial count.
TomographyReport tomographyExperiment(const BlochPoint& truth, const TomographyPlan& plan,
                                      std::uint64_t seed);
TomographyReport tomographyExperiment(const ExtendedCoords& truth, const TomographyPlan& plan,
                                      std::uint64_t seed);
TomographyReport tomographyExperiment(const StateVector& truth, const TomographyPlan& plan,
                                      std::uint64_t seed);

/// Bloch point of the rebit with S_q = cos theta_q, S_p = cos(pi/2 - theta_q).
BlochPoint rebitPoint(double thetaQ);

/// Empirical variance of theta_hat against the chi-squared band around 1/M.
struct VarianceBandResult {
  double theta = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t replicas = 0;
  double varHat = 0.0;
  double expected = 0.0;  // 1/M
  double lower = 0.0;
  double upper = 0.0;
  double pValue = 1.0;  // two-sided
  bool pass = false;
};

VarianceBandResult checkVarianceBand(double theta, std::uint64_t trials, std::uint64_t replicas,
                                     std::uint64_t seed, double sigmas = 5.0);

nlohmann::json toJson(const TomographyReport& r);
std::string toCsv(const TomographyReport& r);
nlohmann::json toJson(const VarianceBandResult& r);

}  // namespace qrecon

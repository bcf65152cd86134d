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
#include <vector>

#include <Eigen/Dense>

#include "qrecon/prob_model.hpp"

namespace qrecon {

/// Outcome counts of M repeated measurements.
struct MeasurementSample {
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const noexcept;
};

/// M Bernoulli trials with P(0) = cos^2(theta/2). The draw is keyed by
/// (seed, replica, observable) so it does not depend on scheduling.
/// Throws DomainError for M = 0.
MeasurementSample simulateBernoulli(ThetaAngle theta, std::uint64_t M, std::uint64_t seed,
                                    std::uint64_t replica = 0, std::uint64_t observable = 0);

struct ThetaEstimate {
  double thetaHat = 0.0;
  double variance = 0.0;  // 1/M, the inverse Fisher information of M trials
};

/// theta_hat = 2 acos(sqrt(count_0 / M)).
ThetaEstimate mleTheta(const MeasurementSample& s);

/// Fisher information of one trial in the theta coordinate: exactly 1.
double fisherInfoTheta(ThetaAngle theta);

/// Same quantity evaluated as the expectation sum over both outcomes.
/// Requires theta strictly inside (0, pi); throws SingularityError otherwise.
double fisherInfoThetaNumeric(double theta);

/// Fisher matrix of the outcome distribution in the theta coordinates of
/// the tree nodes (node order of ConditionalTree). Built as the expectation
/// of outer products of d log rho / d theta. Throws SingularityError when a
/// node sits on the boundary.
Eigen::MatrixXd fisherMatrixNumeric(const ConditionalTree& tree);

/// sum_x rho_x(theta0) log rho_x(theta), the expected log-likelihood.
double expectedLogLikelihood(const ConditionalTree& truth, const std::vector<double>& thetas);

}  // namespace qrecon

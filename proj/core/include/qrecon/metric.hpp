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

#include <vector>

#include "qrecon/state_vector.hpp"

namespace qrecon {

/// sum drho^2/rho + 4 sum rho dphi^2 - 4 (sum rho dphi)^2.
/// Components with rho_j = 0 contribute nothing; a nonzero drho_j there
/// throws SingularityError.
double extendedFisherMetric(const std::vector<double>& rho, const std::vector<double>& drho,
                            const std::vector<double>& dphi);
double extendedFisherMetric(const StateVector& psi, const Tangent& d);

/// Same metric evaluated by splitting on the least significant bit:
///   ds^2 = sum_k rho_k ds^2|_k + dtheta^2 + sin^2(theta) dalpha^2,
/// where rho_0 = cos^2(theta/2) is the mass of the even outcomes and dalpha
/// is the difference of the conditional mean phase shifts of the odd and
/// even halves.
double extendedFisherMetricRecursive(const std::vector<double>& rho, const std::vector<double>& drho,
                                     const std::vector<double>& dphi);
double extendedFisherMetricRecursive(const StateVector& psi, const Tangent& d);

/// <d|d>/<psi|psi> - |<psi|d>|^2/<psi|psi>^2 for an arbitrary nonzero psi.
/// Throws DomainError for the zero vector.
double fubiniStudyMetric(const ComplexVector& psi, const ComplexVector& d);
double fubiniStudyMetric(const StateVector& psi, const Tangent& d);

/// arccos |<psi1|psi2>|, in [0, pi/2].
double fubiniStudyDistance(const StateVector& a, const StateVector& b);

}  // namespace qrecon

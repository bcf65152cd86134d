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

#include "qrecon/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qrecon/bits.hpp"
#include "qrecon/errors.hpp"

namespace qrecon {

namespace {

void checkPolar(const std::vector<double>& rho, const std::vector<double>& drho,
                const std::vector<double>& dphi) {
  if (rho.size() != drho.size() || rho.size() != dphi.size()) {
    throw DomainError("metric arguments have different lengths");
  }
  for (std::size_t j = 0; j < rho.size(); ++j) {
    if (rho[j] < 0.0) throw DomainError("negative probability in metric");
    if (rho[j] == 0.0 && drho[j] != 0.0) {
      throw SingularityError("drho != 0 at zero-mass component " + std::to_string(j));
    }
  }
}

double recurse(const std::vector<double>& rho, const std::vector<double>& drho,
               const std::vector<double>& dphi) {
  const std::size_t n = rho.size();
  if (n == 1) return 0.0;
  const std::size_t half = n / 2;

  // even (k = 0) and odd (k = 1) halves by least significant bit
  double mass[2] = {0.0, 0.0};
  double dmass[2] = {0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    mass[j & 1u] += rho[j];
    dmass[j & 1u] += drho[j];
  }

  double total = 0.0;
  double meanShift[2] = {0.0, 0.0};
  for (unsigned k = 0; k < 2; ++k) {
    if (mass[k] == 0.0) {
      if (dmass[k] != 0.0) throw SingularityError("mass flows into an empty subsystem");
      continue;
    }
    std::vector<double> r(half), dr(half), dp(half);
    for (std::size_t j = 0; j < half; ++j) {
      const std::size_t idx = 2 * j + k;
      r[j] = rho[idx] / mass[k];
      dr[j] = (drho[idx] - r[j] * dmass[k]) / mass[k];
      dp[j] = dphi[idx];
      meanShift[k] += r[j] * dp[j];
    }
    total += mass[k] * recurse(r, dr, dp);
  }

  const double prod = mass[0] * mass[1];
  if (prod > 0.0) {
    const double dalpha = meanShift[1] - meanShift[0];
    total += dmass[0] * dmass[0] / prod;    // dtheta^2
    total += 4.0 * prod * dalpha * dalpha;  // sin^2(theta) dalpha^2
  } else if (dmass[0] != 0.0) {
    throw SingularityError("theta chart is singular at the pole");
  }
  return total;
}

}  // namespace

double extendedFisherMetric(const std::vector<double>& rho, const std::vector<double>& drho,
                            const std::vector<double>& dphi) {
  checkPolar(rho, drho, dphi);
  double fisher = 0.0, phase2 = 0.0, phase = 0.0;
  for (std::size_t j = 0; j < rho.size(); ++j) {
    if (rho[j] == 0.0) continue;
    fisher += drho[j] * drho[j] / rho[j];
    phase2 += rho[j] * dphi[j] * dphi[j];
    phase += rho[j] * dphi[j];
  }
  return fisher + 4.0 * phase2 - 4.0 * phase * phase;
}

double extendedFisherMetric(const StateVector& psi, const Tangent& d) {
  const PolarTangent t = decomposeTangent(psi, d);
  return extendedFisherMetric(psi.probabilities(), t.drho, t.dphi);
}

double extendedFisherMetricRecursive(const std::vector<double>& rho, const std::vector<double>& drho,
                                     const std::vector<double>& dphi) {
  checkPolar(rho, drho, dphi);
  if (rho.empty() || !isPowerOfTwo(rho.size())) {
    throw DomainError("recursive metric needs a power-of-two length");
  }
  return recurse(rho, drho, dphi);
}

double extendedFisherMetricRecursive(const StateVector& psi, const Tangent& d) {
  const PolarTangent t = decomposeTangent(psi, d);
  return extendedFisherMetricRecursive(psi.probabilities(), t.drho, t.dphi);
}

double fubiniStudyMetric(const ComplexVector& psi, const ComplexVector& d) {
  const double nn = norm2(psi);
  if (!(nn > 0.0)) throw DomainError("Fubini-Study metric of the zero vector");
  const Complex overlap = inner(psi, d);
  return norm2(d) / nn - std::norm(overlap) / (nn * nn);
}

double fubiniStudyMetric(const StateVector& psi, const Tangent& d) {
  return fubiniStudyMetric(psi.amps(), d.dAmps);
}

double fubiniStudyDistance(const StateVector& a, const StateVector& b) {
  return std::acos(std::min(1.0, std::abs(inner(a.amps(), b.amps()))));
}

}  // namespace qrecon

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

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "qrecon/state_vector.hpp"

namespace qrecon {

enum class Axis { q, p, r };

std::string toString(Axis a);
Axis axisFromString(const std::string& s);

/// Which cyclic labelling of the sphere axes a chart uses. `standard`
/// rotates the triplet: q -> (q,p,r), r -> (r,q,p), p -> (p,r,q).
/// `exchange` swaps the roles of q and p in the p chart: p -> (p,q,r).
enum class TripletOption { standard, exchange };

/// S-variables of the three observables. Unit norm on pure states.
struct BlochPoint {
  double sQ = 0.0;
  double sP = 0.0;
  double sR = 1.0;

  double get(Axis a) const noexcept;
  double& get(Axis a) noexcept;
  double norm() const noexcept;
  Eigen::Vector3d vec() const noexcept { return {sQ, sP, sR}; }
  static BlochPoint fromVec(const Eigen::Vector3d& v) noexcept { return {v[0], v[1], v[2]}; }
};

/// Polar chart around one observable: theta in [0, pi], alpha in (-pi, pi].
struct ExtendedCoords {
  Axis axis = Axis::q;
  double theta = 0.0;
  double alpha = 0.0;
};

struct ChartPoint {
  ExtendedCoords coords;
  bool alphaDefined = true;  // false at the poles of the chart
};

struct ChartTangent {
  double dtheta = 0.0;
  double dalpha = 0.0;
};

/// The three axes (mu, nu, xi) of the chart around `axis`.
std::array<Axis, 3> chartTriplet(Axis axis, TripletOption option = TripletOption::standard);

/// pi/2 - theta_q. May leave [0, pi]; the rebit circle is covered with
/// theta_p in [-pi/2, pi/2] and probabilities from the even functions
/// cos^2, sin^2.
double rebitConjugate(double thetaQ);

/// S_mu = cos theta, S_nu = sin theta cos alpha, S_xi = sin theta sin alpha.
BlochPoint blochFromExtended(const ExtendedCoords& c, TripletOption option = TripletOption::standard);

/// Inverse chart. At a pole (sin theta < 1e-12) alpha is reported undefined.
ChartPoint extendedFromBloch(Axis axis, const BlochPoint& pt,
                             TripletOption option = TripletOption::standard);

/// psi in the q basis with phi_0 = 0, reproducing
/// S_q = |psi_1|^2 - |psi_0|^2, S_p = 2 Re(conj(psi_0) psi_1),
/// S_r = 2 Im(conj(psi_0) psi_1).
StateVector psiFromBloch(const BlochPoint& pt);
BlochPoint blochFromPsi(const StateVector& psi);

/// (1/sqrt 2)[[1, 1], [1, -1]] applied to a two-component state.
StateVector hadamardTransform(const StateVector& psi);

/// dtheta^2 + sin^2(theta) dalpha^2.
double metricInCoords(const ExtendedCoords& c, double dtheta, double dalpha);

/// Pushes a sphere tangent (dS_q, dS_p, dS_r) into the chart around `axis`.
/// Throws SingularityError at the chart poles.
ChartTangent pushTangentToChart(Axis axis, const BlochPoint& pt, const Eigen::Vector3d& dS,
                                TripletOption option = TripletOption::standard);

/// Axis q: [[0, 1], [1, 0]]. Axis p: diag(1, -1).
StateVector shiftRotation2(const StateVector& psi, Axis axis);

/// d phi'_k / d phi_j for psi' = H psi, with the moduli held fixed.
/// Throws SingularityError when psi_0 + psi_1 or psi_0 - psi_1 vanishes.
Eigen::Matrix2d transformedPhaseJacobian(const StateVector& psi);

nlohmann::json toJson(const BlochPoint& pt);
BlochPoint blochPointFromJson(const nlohmann::json& j);
nlohmann::json toJson(const ExtendedCoords& c);
ExtendedCoords extendedCoordsFromJson(const nlohmann::json& j);

}  // namespace qrecon

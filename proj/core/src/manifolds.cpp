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

#include "qrecon/manifolds.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "qrecon/errors.hpp"

namespace qrecon {

namespace {

constexpr double kPoleTolerance = 1e-12;
constexpr double kUnitTolerance = 1e-12;

void requireTwo(const StateVector& psi) {
  if (psi.size() != 2) throw DomainError("expected a two-component state");
}

void requireUnit(const BlochPoint& pt) {
  if (std::abs(pt.norm() - 1.0) > kUnitTolerance) {
    throw DomainError("Bloch point is not on the unit sphere");
  }
}

double wrapAlpha(double a) { return a <= -std::numbers::pi ? a + 2.0 * std::numbers::pi : a; }

}  // namespace

std::string toString(Axis a) {
  switch (a) {
    case Axis::q: return "q";
    case Axis::p: return "p";
    case Axis::r: return "r";
  }
  return "?";
}

Axis axisFromString(const std::string& s) {
  if (s == "q") return Axis::q;
  if (s == "p") return Axis::p;
  if (s == "r") return Axis::r;
  throw DomainError("unknown axis '" + s + "'");
}

double BlochPoint::get(Axis a) const noexcept {
  return a == Axis::q ? sQ : a == Axis::p ? sP : sR;
}

double& BlochPoint::get(Axis a) noexcept { return a == Axis::q ? sQ : a == Axis::p ? sP : sR; }

double BlochPoint::norm() const noexcept { return std::sqrt(sQ * sQ + sP * sP + sR * sR); }

std::array<Axis, 3> chartTriplet(Axis axis, TripletOption option) {
  switch (axis) {
    case Axis::q: return {Axis::q, Axis::p, Axis::r};
    case Axis::r: return {Axis::r, Axis::q, Axis::p};
    case Axis::p:
      return option == TripletOption::standard ? std::array{Axis::p, Axis::r, Axis::q}
                                               : std::array{Axis::p, Axis::q, Axis::r};
  }
  throw DomainError("bad axis");
}

double rebitConjugate(double thetaQ) { return std::numbers::pi / 2.0 - thetaQ; }

BlochPoint blochFromExtended(const ExtendedCoords& c, TripletOption option) {
  if (!(c.theta >= 0.0 && c.theta <= std::numbers::pi)) throw DomainError("theta outside [0, pi]");
  const auto [mu, nu, xi] = chartTriplet(c.axis, option);
  BlochPoint pt{0.0, 0.0, 0.0};
  pt.get(mu) = std::cos(c.theta);
  pt.get(nu) = std::sin(c.theta) * std::cos(c.alpha);
  pt.get(xi) = std::sin(c.theta) * std::sin(c.alpha);
  return pt;
}

ChartPoint extendedFromBloch(Axis axis, const BlochPoint& pt, TripletOption option) {
  requireUnit(pt);
  const auto [mu, nu, xi] = chartTriplet(axis, option);
  const double s = std::hypot(pt.get(nu), pt.get(xi));
  ChartPoint out;
  out.coords.axis = axis;
  out.coords.theta = std::atan2(s, pt.get(mu));
  if (s < kPoleTolerance) {
    out.alphaDefined = false;
    out.coords.alpha = 0.0;
  } else {
    out.coords.alpha = wrapAlpha(std::atan2(pt.get(xi), pt.get(nu)));
  }
  return out;
}

StateVector psiFromBloch(const BlochPoint& pt) {
  requireUnit(pt);
  const double alpha = std::atan2(pt.sR, pt.sP);
  const double a0 = std::sqrt(std::max(0.0, (1.0 - pt.sQ) / 2.0));
  const double a1 = std::sqrt(std::max(0.0, (1.0 + pt.sQ) / 2.0));
  return StateVector::normalized({Complex(a0, 0.0), std::polar(a1, alpha)});
}

BlochPoint blochFromPsi(const StateVector& psi) {
  requireTwo(psi);
  const Complex c = std::conj(psi[0]) * psi[1];
  return BlochPoint{std::norm(psi[1]) - std::norm(psi[0]), 2.0 * c.real(), 2.0 * c.imag()};
}

StateVector hadamardTransform(const StateVector& psi) {
  requireTwo(psi);
  const double h = std::numbers::sqrt2 / 2.0;
  return StateVector::normalized({h * (psi[0] + psi[1]), h * (psi[0] - psi[1])});
}

double metricInCoords(const ExtendedCoords& c, double dtheta, double dalpha) {
  const double s = std::sin(c.theta);
  return dtheta * dtheta + s * s * dalpha * dalpha;
}

ChartTangent pushTangentToChart(Axis axis, const BlochPoint& pt, const Eigen::Vector3d& dS,
                                TripletOption option) {
  requireUnit(pt);
  const auto [mu, nu, xi] = chartTriplet(axis, option);
  const auto comp = [&](Axis a) { return a == Axis::q ? dS[0] : a == Axis::p ? dS[1] : dS[2]; };
  const double smu = pt.get(mu), snu = pt.get(nu), sxi = pt.get(xi);
  const double rho2 = snu * snu + sxi * sxi;
  const double rho = std::sqrt(rho2);
  if (rho < kPoleTolerance) throw SingularityError("chart pole: alpha undefined");
  const double drho = (snu * comp(nu) + sxi * comp(xi)) / rho;
  // theta = atan2(rho, S_mu), alpha = atan2(S_xi, S_nu)
  const double r2 = rho2 + smu * smu;
  return ChartTangent{(smu * drho - rho * comp(mu)) / r2, (snu * comp(xi) - sxi * comp(nu)) / rho2};
}

StateVector shiftRotation2(const StateVector& psi, Axis axis) {
  requireTwo(psi);
  switch (axis) {
    case Axis::q: return StateVector({psi[1], psi[0]});
    case Axis::p: return StateVector({psi[0], -psi[1]});
    case Axis::r: break;
  }
  throw DomainError("shiftRotation2 is defined for the q and p axes");
}

Eigen::Matrix2d transformedPhaseJacobian(const StateVector& psi) {
  requireTwo(psi);
  Eigen::Matrix2d J;
  for (int k = 0; k < 2; ++k) {
    const double sk = k == 0 ? 1.0 : -1.0;
    const Complex img = psi[0] + sk * psi[1];
    const double m = std::norm(img);
    if (m < 1e-24) throw SingularityError("transformed component vanishes; its phase is undefined");
    for (int j = 0; j < 2; ++j) {
      const double sign = (j * k) % 2 == 0 ? 1.0 : -1.0;
      J(k, j) = sign * (std::conj(img) * Complex(0.0, 1.0) * psi[static_cast<std::size_t>(j)]).imag() / m;
    }
  }
  return J;
}

nlohmann::json toJson(const BlochPoint& pt) { return nlohmann::json::array({pt.sQ, pt.sP, pt.sR}); }

BlochPoint blochPointFromJson(const nlohmann::json& j) {
  return BlochPoint{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

nlohmann::json toJson(const ExtendedCoords& c) {
  return nlohmann::json{{"axis", toString(c.axis)}, {"theta", c.theta}, {"alpha", c.alpha}};
}

ExtendedCoords extendedCoordsFromJson(const nlohmann::json& j) {
  return ExtendedCoords{axisFromString(j.at("axis").get<std::string>()), j.at("theta").get<double>(),
                        j.value("alpha", 0.0)};
}

}  // namespace qrecon

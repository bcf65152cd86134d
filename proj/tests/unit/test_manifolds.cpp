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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "qrecon/errors.hpp"
#include "qrecon/manifolds.hpp"
#include "qrecon/metric.hpp"
#include "qrecon/prob_model.hpp"

namespace qrecon {
namespace {

constexpr double kPi = std::numbers::pi;

BlochPoint randomPoint(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  Eigen::Vector3d v(n(g), n(g), n(g));
  return BlochPoint::fromVec(v.normalized());
}

Eigen::Vector3d randomSphereTangent(const BlochPoint& pt, std::mt19937_64& g) {
  std::normal_distribution<double> n;
  Eigen::Vector3d v(n(g), n(g), n(g));
  const Eigen::Vector3d s = pt.vec();
  return v - v.dot(s) * s;
}

Eigen::Matrix2cd asMatrix(Axis axis) {
  Eigen::Matrix2cd m;
  for (int c = 0; c < 2; ++c) {
    const auto out = shiftRotation2(StateVector::basis(1, static_cast<std::size_t>(c)), axis);
    m(0, c) = out[0];
    m(1, c) = out[1];
  }
  return m;
}

TEST(Rebit, ConjugateAngle) {
  EXPECT_DOUBLE_EQ(rebitConjugate(0.0), kPi / 2);
  EXPECT_DOUBLE_EQ(rebitConjugate(kPi / 2), 0.0);
  const auto [r0, r1] = probFromTheta(rebitConjugate(0.0));
  EXPECT_NEAR(r0, 0.5, 1e-15);
  EXPECT_NEAR(r1, 0.5, 1e-15);
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(0.0, kPi);
  for (int i = 0; i < 100; ++i) {
    const double tq = u(g);
    const double tp = rebitConjugate(tq);
    EXPECT_NEAR(std::pow(std::cos(tq), 2) + std::pow(std::cos(tp), 2), 1.0, 1e-14);
  }
}

TEST(BlochFromExtended, Examples) {
  const auto pole = blochFromExtended({Axis::r, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(pole.sR, 1.0);
  EXPECT_DOUBLE_EQ(pole.sQ, 0.0);
  EXPECT_DOUBLE_EQ(pole.sP, 0.0);
  const auto eq = blochFromExtended({Axis::r, kPi / 2, 0.0});
  EXPECT_NEAR(eq.sQ, 1.0, 1e-15);
  EXPECT_NEAR(eq.sP, 0.0, 1e-15);
  EXPECT_NEAR(eq.sR, 0.0, 1e-15);
}

TEST(BlochFromExtended, TripletConventions) {
  EXPECT_EQ(chartTriplet(Axis::q), (std::array{Axis::q, Axis::p, Axis::r}));
  EXPECT_EQ(chartTriplet(Axis::r), (std::array{Axis::r, Axis::q, Axis::p}));
  EXPECT_EQ(chartTriplet(Axis::p), (std::array{Axis::p, Axis::r, Axis::q}));
  EXPECT_EQ(chartTriplet(Axis::p, TripletOption::exchange), (std::array{Axis::p, Axis::q, Axis::r}));
}

TEST(BlochFromExtended, UnitNormAndRoundTrip) {
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> th(0.0, kPi), al(-kPi, kPi);
  for (auto opt : {TripletOption::standard, TripletOption::exchange}) {
    for (Axis a : {Axis::q, Axis::p, Axis::r}) {
      for (int i = 0; i < 200; ++i) {
        const ExtendedCoords c{a, th(g), al(g)};
        const auto pt = blochFromExtended(c, opt);
        EXPECT_NEAR(pt.norm(), 1.0, 1e-12);
        const auto back = extendedFromBloch(a, pt, opt);
        ASSERT_TRUE(back.alphaDefined);
        EXPECT_NEAR(back.coords.theta, c.theta, 1e-12);
        EXPECT_NEAR(std::remainder(back.coords.alpha - c.alpha, 2 * kPi), 0.0, 1e-12);
        EXPECT_GT(back.coords.alpha, -kPi);
        EXPECT_LE(back.coords.alpha, kPi);
      }
    }
  }
}

TEST(ExtendedFromBloch, PoleAndEquator) {
  const auto pole = extendedFromBloch(Axis::r, {0.0, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(pole.coords.theta, 0.0);
  EXPECT_FALSE(pole.alphaDefined);
  const auto eq = extendedFromBloch(Axis::r, {1.0, 0.0, 0.0});
  EXPECT_NEAR(eq.coords.theta, kPi / 2, 1e-15);
  EXPECT_TRUE(eq.alphaDefined);
  EXPECT_NEAR(eq.coords.alpha, 0.0, 1e-15);
  EXPECT_THROW(extendedFromBloch(Axis::q, {0.5, 0.0, 0.0}), DomainError);
}

TEST(PsiFromBloch, Examples) {
  const auto a = psiFromBloch({1.0, 0.0, 0.0});
  EXPECT_NEAR(std::abs(a[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a[1] - 1.0), 0.0, 1e-15);
  const auto b = psiFromBloch({0.0, 1.0, 0.0});
  EXPECT_NEAR(std::abs(b[0] - std::sqrt(0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b[1] - std::sqrt(0.5)), 0.0, 1e-15);
}

TEST(PsiFromBloch, PauliExpectationsRoundTrip) {
  Eigen::Matrix2cd s1, s2, s3q;
  s1 << 0, 1, 1, 0;
  s2 << 0, Complex(0, -1), Complex(0, 1), 0;
  s3q << -1, 0, 0, 1;  // S_q = |psi_1|^2 - |psi_0|^2
  std::mt19937_64 g(3);
  for (int i = 0; i < 500; ++i) {
    const auto pt = randomPoint(g);
    const auto psi = psiFromBloch(pt);
    EXPECT_DOUBLE_EQ(psi[0].imag(), 0.0);  // phi_0 gauge
    const Eigen::Vector2cd v(psi[0], psi[1]);
    EXPECT_NEAR((v.adjoint() * s1 * v)(0).real(), pt.sP, 1e-12);
    EXPECT_NEAR((v.adjoint() * s2 * v)(0).real(), pt.sR, 1e-12);
    EXPECT_NEAR((v.adjoint() * s3q * v)(0).real(), pt.sQ, 1e-12);
    const auto back = blochFromPsi(psi);
    EXPECT_NEAR((back.vec() - pt.vec()).norm(), 0.0, 1e-12);
  }
}

TEST(Hadamard, ActionAndInvolution) {
  const auto h = hadamardTransform(StateVector::basis(1, 0));
  EXPECT_NEAR(std::abs(h[0] - std::sqrt(0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h[1] - std::sqrt(0.5)), 0.0, 1e-15);
  std::mt19937_64 g(4);
  for (int i = 0; i < 200; ++i) {
    const auto pt = randomPoint(g);
    const auto psi = psiFromBloch(pt);
    const auto hh = hadamardTransform(hadamardTransform(psi));
    EXPECT_NEAR(std::abs(hh[0] - psi[0]) + std::abs(hh[1] - psi[1]), 0.0, 1e-15);
    const auto rp = hadamardTransform(psi).probabilities();
    EXPECT_NEAR(rp[0], (1 + pt.sP) / 2, 1e-12);
    EXPECT_NEAR(rp[1], (1 - pt.sP) / 2, 1e-12);
  }
}

TEST(MetricInCoords, Examples) {
  EXPECT_DOUBLE_EQ(metricInCoords({Axis::q, kPi / 2, 0.0}, 0.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(metricInCoords({Axis::q, 0.0, 0.0}, 0.0, 5.0), 0.0);
}

TEST(ChartInvariance, SameTangentSameLength) {
  std::mt19937_64 g(5);
  for (int i = 0; i < 500; ++i) {
    const auto pt = randomPoint(g);
    const Eigen::Vector3d dS = randomSphereTangent(pt, g);
    for (auto opt : {TripletOption::standard, TripletOption::exchange}) {
      for (Axis a : {Axis::q, Axis::p, Axis::r}) {
        const auto c = extendedFromBloch(a, pt, opt);
        const auto t = pushTangentToChart(a, pt, dS, opt);
        EXPECT_NEAR(metricInCoords(c.coords, t.dtheta, t.dalpha), dS.squaredNorm(), 1e-10);
      }
    }
  }
}

TEST(ChartInvariance, PushedTangentMatchesFiniteDifference) {
  std::mt19937_64 g(6);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const auto pt = randomPoint(g);
    const Eigen::Vector3d dS = randomSphereTangent(pt, g);
    for (Axis a : {Axis::q, Axis::p, Axis::r}) {
      const auto plus = extendedFromBloch(a, BlochPoint::fromVec((pt.vec() + h * dS).normalized()));
      const auto minus = extendedFromBloch(a, BlochPoint::fromVec((pt.vec() - h * dS).normalized()));
      const auto t = pushTangentToChart(a, pt, dS);
      EXPECT_NEAR((plus.coords.theta - minus.coords.theta) / (2 * h), t.dtheta, 1e-5);
      EXPECT_NEAR(std::remainder(plus.coords.alpha - minus.coords.alpha, 2 * kPi) / (2 * h), t.dalpha,
                  1e-5 * (1 + std::abs(t.dalpha)));
    }
  }
}

TEST(ChartInvariance, AgreesWithStateSpaceMetric) {
  std::mt19937_64 g(7);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const auto pt = randomPoint(g);
    if (std::abs(pt.sQ) > 0.99) continue;  // gauge-fixed psi is not smooth at the q poles
    const Eigen::Vector3d dS = randomSphereTangent(pt, g);
    const auto plus = psiFromBloch(BlochPoint::fromVec((pt.vec() + h * dS).normalized()));
    const auto minus = psiFromBloch(BlochPoint::fromVec((pt.vec() - h * dS).normalized()));
    const auto psi = psiFromBloch(pt);
    Tangent d{{(plus[0] - minus[0]) / (2 * h), (plus[1] - minus[1]) / (2 * h)}};
    EXPECT_NEAR(extendedFisherMetric(psi, d), dS.squaredNorm(), 1e-6 * (1 + dS.squaredNorm()));
  }
}

TEST(ChartInvariance, PoleIsSingular) {
  EXPECT_THROW(pushTangentToChart(Axis::q, {1.0, 0.0, 0.0}, Eigen::Vector3d(0, 1, 0)), SingularityError);
}

TEST(ShiftRotation2, Examples) {
  const auto a = shiftRotation2(StateVector::basis(1, 0), Axis::p);
  EXPECT_EQ(a[0], Complex(1.0));
  EXPECT_EQ(a[1], Complex(0.0));

  const auto s = shiftRotation2(StateVector::normalized({Complex(0.6, 0.0), Complex(0.0, 0.8)}), Axis::q);
  EXPECT_EQ(s[0], Complex(0.0, 0.8));
  EXPECT_EQ(s[1], Complex(0.6, 0.0));

  Eigen::Matrix2cd H;
  H << 1, 1, 1, -1;
  H /= std::sqrt(2.0);
  EXPECT_LT((H * asMatrix(Axis::p) * H - asMatrix(Axis::q)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(shiftRotation2(StateVector::basis(1, 0), Axis::r), DomainError);
}

TEST(ShiftRotation2, PAxisSwapsConjugateProbabilities) {
  std::mt19937_64 g(8);
  for (int i = 0; i < 100; ++i) {
    const auto psi = psiFromBloch(randomPoint(g));
    const auto out = shiftRotation2(psi, Axis::p);
    EXPECT_NEAR(out.probabilities()[0], psi.probabilities()[0], 1e-15);
    const auto rp = hadamardTransform(psi).probabilities();
    const auto rpOut = hadamardTransform(out).probabilities();
    EXPECT_NEAR(rpOut[0], rp[1], 1e-12);
    EXPECT_NEAR(rpOut[1], rp[0], 1e-12);
  }
}

TEST(TransformedPhaseJacobian, BasisState) {
  const auto J = transformedPhaseJacobian(StateVector::basis(1, 0));
  EXPECT_NEAR(J(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(J(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(J(1, 0), 1.0, 1e-15);
  EXPECT_NEAR(J(1, 1), 0.0, 1e-15);
}

TEST(TransformedPhaseJacobian, FiniteDifferenceAndWeightedMean) {
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-6;
  for (int i = 0; i < 300; ++i) {
    const auto psi = psiFromBloch(randomPoint(g));
    Eigen::Matrix2d J;
    try {
      J = transformedPhaseJacobian(psi);
    } catch (const SingularityError&) {
      continue;
    }
    const auto rho = psi.probabilities();
    const auto phi = psi.phases();
    for (int j = 0; j < 2; ++j) {
      auto shifted = [&](double eps) {
        auto ph = phi;
        ph[static_cast<std::size_t>(j)] += eps;
        return hadamardTransform(StateVector::fromPolar(rho, ph));
      };
      const auto p = shifted(h), m = shifted(-h);
      for (int k = 0; k < 2; ++k) {
        const double fd = std::arg(p[static_cast<std::size_t>(k)] / m[static_cast<std::size_t>(k)]) / (2 * h);
        EXPECT_NEAR(J(k, j), fd, 1e-6) << "k=" << k << " j=" << j;
      }
    }
    const auto rp = hadamardTransform(psi).probabilities();
    const Eigen::Vector2d dphi(u(g), u(g));
    const Eigen::Vector2d dphiT = J * dphi;
    EXPECT_NEAR(rp[0] * dphiT[0] + rp[1] * dphiT[1], rho[0] * dphi[0] + rho[1] * dphi[1], 1e-12);
  }
}

TEST(TransformedPhaseJacobian, DegenerateImage) {
  EXPECT_THROW(transformedPhaseJacobian(StateVector::normalized({1.0, -1.0})), SingularityError);
  EXPECT_THROW(transformedPhaseJacobian(StateVector::normalized({1.0, 1.0})), SingularityError);
}

TEST(ManifoldJson, RoundTrip) {
  const BlochPoint pt{0.6, 0.0, 0.8};
  EXPECT_EQ(blochPointFromJson(toJson(pt)).vec(), pt.vec());
  const ExtendedCoords c{Axis::p, 1.2, -0.4};
  const auto back = extendedCoordsFromJson(toJson(c));
  EXPECT_EQ(back.axis, Axis::p);
  EXPECT_DOUBLE_EQ(back.theta, 1.2);
  EXPECT_DOUBLE_EQ(back.alpha, -0.4);
  EXPECT_THROW(axisFromString("x"), DomainError);
}

}  // namespace
}  // namespace qrecon

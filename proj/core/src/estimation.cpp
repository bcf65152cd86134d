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

#include "qrecon/estimation.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qrecon/errors.hpp"
#include "qrecon/rng.hpp"

namespace qrecon {

std::uint64_t MeasurementSample::total() const noexcept {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

MeasurementSample simulateBernoulli(ThetaAngle theta, std::uint64_t M, std::uint64_t seed,
                                    std::uint64_t replica, std::uint64_t observable) {
  if (M == 0) throw DomainError("simulateBernoulli needs at least one trial");
  const double p0 = probFromTheta(theta).first;
  std::uint64_t zeros;
  if (p0 >= 1.0) {
    zeros = M;
  } else if (p0 <= 0.0) {
    zeros = 0;
  } else {
    CounterRng rng(seed, replica, observable);
    std::binomial_distribution<std::uint64_t> draw(M, p0);
    zeros = draw(rng);
  }
  return MeasurementSample{{zeros, M - zeros}};
}

ThetaEstimate mleTheta(const MeasurementSample& s) {
  if (s.counts.size() != 2) throw DomainError("mleTheta needs a two-outcome sample");
  const std::uint64_t M = s.total();
  if (M == 0) throw DomainError("mleTheta needs a nonempty sample");
  const double rho0 = static_cast<double>(s.counts[0]) / static_cast<double>(M);
  return ThetaEstimate{2.0 * std::acos(std::sqrt(rho0)), 1.0 / static_cast<double>(M)};
}

double fisherInfoTheta(ThetaAngle) { return 1.0; }

double fisherInfoThetaNumeric(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw SingularityError("outcome probability vanishes at the boundary");
  }
  const auto [r0, r1] = probFromTheta(theta);
  // d rho_0 / d theta = -sin(theta)/2 = -d rho_1 / d theta
  const double d = 0.5 * std::sin(theta);
  return r0 * (d / r0) * (d / r0) + r1 * (d / r1) * (d / r1);
}

namespace {

// d log cos^2(t/2) / dt and d log sin^2(t/2) / dt
double dLogP0(double t) { return -std::tan(t / 2.0); }
double dLogP1(double t) { return 1.0 / std::tan(t / 2.0); }

}  // namespace

Eigen::MatrixXd fisherMatrixNumeric(const ConditionalTree& tree) {
  const int n = tree.depth();
  const std::size_t dim = tree.nodeCount();
  for (double p : tree.nodes()) {
    if (!(p > 0.0 && p < 1.0)) throw SingularityError("Fisher matrix undefined at a boundary node");
  }
  const std::vector<double> th = tree.thetas();
  const Distribution rho = reconstitute(tree);
  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                               static_cast<Eigen::Index>(dim));
  Eigen::VectorXd score(static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < rho.size(); ++x) {
    score.setZero();
    for (int depth = 0; depth < n; ++depth) {
      const std::size_t s = x & ((std::size_t{1} << depth) - 1);
      const std::size_t idx = (std::size_t{1} << depth) - 1 + s;
      const double t = th[idx];
      score[static_cast<Eigen::Index>(idx)] = ((x >> depth) & 1u) ? dLogP1(t) : dLogP0(t);
    }
    info += rho[x] * score * score.transpose();
  }
  return info;
}

double expectedLogLikelihood(const ConditionalTree& truth, const std::vector<double>& thetas) {
  const Distribution p = reconstitute(truth);
  const Distribution q = reconstitute(ConditionalTree::fromThetas(truth.depth(), thetas));
  double s = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0) s += p[x] * std::log(q[x]);
  }
  return s;
}

}  // namespace qrecon

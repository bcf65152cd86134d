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

#include "qrecon/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <nlohmann/json.hpp>

#include "qrecon/errors.hpp"
#include "qrecon/estimation.hpp"
#include "qrecon/parallel.hpp"

namespace qrecon {

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

// Two-pass mean and unbiased variance in index order.
Moments moments(const std::vector<double>& xs) {
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return m;
  for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(xs.size() - 1);
  return m;
}

std::vector<double> replicateEstimates(double rho0, std::uint64_t M, std::uint64_t replicas,
                                       std::uint64_t seed, std::uint64_t observable) {
  const ThetaAngle theta = thetaFromProb(rho0);
  std::vector<double> est(replicas);
  parallelFor(replicas, [&](std::size_t r) {
    est[r] = mleTheta(simulateBernoulli(theta, M, seed, r, observable)).thetaHat;
  });
  return est;
}

}  // namespace

BlochPoint rebitPoint(double thetaQ) {
  return BlochPoint{std::cos(thetaQ), std::cos(rebitConjugate(thetaQ)), 0.0};
}

TomographyReport tomographyExperiment(const BlochPoint& truth, const TomographyPlan& plan,
                                      std::uint64_t seed) {
  if (plan.observables.empty()) throw DomainError("tomography plan has no observables");
  if (plan.replicas < 2) throw DomainError("tomography needs at least two replicas");
  if (!(plan.parityTolerance > 0.0)) throw DomainError("parity tolerance must be positive");
  for (const auto& o : plan.observables) {
    if (o.trials == 0) throw DomainError("observable " + toString(o.axis) + " has zero trials");
  }
  if (std::abs(truth.norm() - 1.0) > 1e-9) throw DomainError("true state is not on the unit sphere");

  TomographyReport rep;
  rep.seed = seed;
  rep.replicas = plan.replicas;
  rep.truth = truth;
  rep.parityTolerance = plan.parityTolerance;

  for (std::size_t i = 0; i < plan.observables.size(); ++i) {
    const auto& o = plan.observables[i];
    const double s = std::clamp(truth.get(o.axis), -1.0, 1.0);
    const double rho0 = (1.0 + s) / 2.0;
    const std::vector<double> est = replicateEstimates(rho0, o.trials, plan.replicas, seed, i);
    const Moments m = moments(est);
    ObservableResult res;
    res.axis = o.axis;
    res.trials = o.trials;
    res.thetaTrue = thetaFromProb(rho0).value();
    res.thetaHat = m.mean;
    res.varHat = m.var;
    res.boundary = m.var == 0.0;
    res.precisionPerMeasurement = res.boundary ? 0.0 : 1.0 / (static_cast<double>(o.trials) * m.var);
    rep.observables.push_back(res);
  }

  double lo = INFINITY, hi = 0.0, sum = 0.0;
  for (const auto& r : rep.observables) {
    if (r.boundary) continue;
    lo = std::min(lo, r.precisionPerMeasurement);
    hi = std::max(hi, r.precisionPerMeasurement);
    sum += r.precisionPerMeasurement;
    ++rep.compared;
  }
  if (rep.compared >= 2) {
    rep.parityDeviation = (hi - lo) / (sum / rep.compared);
    rep.pass = rep.parityDeviation <= plan.parityTolerance;
  } else {
    rep.pass = true;
  }
  return rep;
}

TomographyReport tomographyExperiment(const ExtendedCoords& truth, const TomographyPlan& plan,
                                      std::uint64_t seed) {
  return tomographyExperiment(blochFromExtended(truth), plan, seed);
}

TomographyReport tomographyExperiment(const StateVector& truth, const TomographyPlan& plan,
                                      std::uint64_t seed) {
  return tomographyExperiment(blochFromPsi(truth), plan, seed);
}

VarianceBandResult checkVarianceBand(double theta, std::uint64_t trials, std::uint64_t replicas,
                                     std::uint64_t seed, double sigmas) {
  if (trials == 0 || replicas < 2) throw DomainError("variance band needs M >= 1 and R >= 2");
  VarianceBandResult res;
  res.theta = theta;
  res.trials = trials;
  res.replicas = replicas;
  res.expected = 1.0 / static_cast<double>(trials);
  res.varHat = moments(replicateEstimates(probFromTheta(ThetaAngle(theta)).first, trials, replicas,
                                          seed, 0))
                   .var;

  const double dof = static_cast<double>(replicas - 1);
  const boost::math::normal_distribution<double> gauss;
  const double tail = boost::math::cdf(boost::math::complement(gauss, sigmas));
  const boost::math::chi_squared_distribution<double> chi2(dof);
  res.lower = res.expected * boost::math::quantile(chi2, tail) / dof;
  res.upper = res.expected * boost::math::quantile(boost::math::complement(chi2, tail)) / dof;
  const double stat = dof * res.varHat / res.expected;
  const double cdf = boost::math::cdf(chi2, stat);
  res.pValue = std::min(1.0, 2.0 * std::min(cdf, 1.0 - cdf));
  res.pass = res.varHat >= res.lower && res.varHat <= res.upper;
  return res;
}

nlohmann::json toJson(const TomographyReport& r) {
  nlohmann::json obs = nlohmann::json::array();
  for (const auto& o : r.observables) {
    obs.push_back({{"observable", toString(o.axis)},
                   {"M", o.trials},
                   {"thetaTrue", o.thetaTrue},
                   {"thetaHat", o.thetaHat},
                   {"varHat", o.varHat},
                   {"precisionPerMeasurement", o.precisionPerMeasurement},
                   {"boundary", o.boundary}});
  }
  return nlohmann::json{{"seed", r.seed},
                        {"replicas", r.replicas},
                        {"truth", toJson(r.truth)},
                        {"observables", std::move(obs)},
                        {"parity",
                         {{"deviation", r.parityDeviation},
                          {"tolerance", r.parityTolerance},
                          {"compared", r.compared}}},
                        {"pass", r.pass}};
}

std::string toCsv(const TomographyReport& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "observable,M,thetaHat,varHat,precisionPerMeasurement\n";
  for (const auto& o : r.observables) {
    os << toString(o.axis) << ',' << o.trials << ',' << o.thetaHat << ',' << o.varHat << ','
       << o.precisionPerMeasurement << '\n';
  }
  return os.str();
}

nlohmann::json toJson(const VarianceBandResult& r) {
  return nlohmann::json{{"theta", r.theta},       {"M", r.trials},        {"replicas", r.replicas},
                        {"varHat", r.varHat},     {"expected", r.expected}, {"lower", r.lower},
                        {"upper", r.upper},       {"pValue", r.pValue},   {"pass", r.pass}};
}

}  // namespace qrecon

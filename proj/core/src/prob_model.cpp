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

#include "qrecon/prob_model.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "qrecon/bits.hpp"
#include "qrecon/errors.hpp"
#include "qrecon/partition.hpp"

namespace qrecon {

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("distribution is empty");
  double sum = 0.0;
  for (double& p : probs_) {
    if (!std::isfinite(p)) throw DomainError("distribution entry is not finite");
    if (p < 0.0) {
      if (p < -kNormTolerance) throw DomainError("negative probability " + std::to_string(p));
      p = 0.0;
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kRenormalizeTolerance) {
    throw DomainError("probabilities sum to " + std::to_string(sum));
  }
  for (double& p : probs_) p /= sum;
}

Distribution Distribution::uniform(int n) {
  const std::size_t size = std::size_t{1} << n;
  return Distribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

Distribution Distribution::pointMass(int n, std::size_t outcome) {
  std::vector<double> p(std::size_t{1} << n, 0.0);
  if (outcome >= p.size()) throw DomainError("point mass outcome outside domain");
  p[outcome] = 1.0;
  return Distribution(std::move(p));
}

int Distribution::width() const {
  if (!isPowerOfTwo(probs_.size())) throw DomainError("distribution size is not a power of two");
  return log2Exact(probs_.size());
}

ThetaAngle::ThetaAngle(double value) : value_(value) {
  constexpr double pi = std::numbers::pi;
  if (!(value >= -kNormTolerance && value <= pi + kNormTolerance)) {
    throw DomainError("theta " + std::to_string(value) + " outside [0, pi]");
  }
  value_ = std::clamp(value, 0.0, pi);
}

std::pair<double, double> probFromTheta(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {c * c, s * s};
}

ThetaAngle thetaFromProb(double rho0) {
  if (!(rho0 >= -kNormTolerance && rho0 <= 1.0 + kNormTolerance)) {
    throw DomainError("probability " + std::to_string(rho0) + " outside [0, 1]");
  }
  return ThetaAngle(2.0 * std::acos(std::sqrt(std::clamp(rho0, 0.0, 1.0))));
}

double sVariable(const Distribution& d) {
  if (d.size() != 2) throw DomainError("sVariable needs a two-outcome distribution");
  return d[0] - d[1];
}

ConditionalTree::ConditionalTree(int n)
    : n_(n), nodes_((std::size_t{1} << n) - 1, 0.5) {
  if (n < 0 || n > 30) throw DomainError("tree depth out of range");
}

ConditionalTree::ConditionalTree(int n, std::vector<double> nodes) : n_(n), nodes_(std::move(nodes)) {
  if (n < 0 || n > 30) throw DomainError("tree depth out of range");
  if (nodes_.size() != (std::size_t{1} << n) - 1) {
    throw DomainError("tree of depth " + std::to_string(n) + " needs 2^n - 1 nodes");
  }
  for (double p : nodes_) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("tree node outside [0, 1]");
  }
}

std::size_t ConditionalTree::nodeIndex(int l, std::uint64_t suffix) const {
  if (l < 1 || l > n_) throw DomainError("tree level out of range");
  const int d = n_ - l;
  if (suffix >= (std::uint64_t{1} << d)) throw DomainError("tree suffix out of range");
  return (std::size_t{1} << d) - 1 + suffix;
}

std::vector<double> ConditionalTree::thetas() const {
  std::vector<double> out(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = thetaFromProb(nodes_[i]).value();
  return out;
}

ConditionalTree ConditionalTree::fromThetas(int n, const std::vector<double>& thetas) {
  std::vector<double> nodes(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    nodes[i] = probFromTheta(ThetaAngle(thetas[i])).first;
  }
  return ConditionalTree(n, std::move(nodes));
}

ConditionalTree factorize(const Distribution& d) {
  const int n = d.width();
  // mass[s] = P(x mod 2^depth == s), refined one bit per pass
  std::vector<double> mass{1.0};
  std::vector<double> nodes;
  nodes.reserve(d.size() - 1);
  for (int depth = 0; depth < n; ++depth) {
    const std::size_t cells = std::size_t{1} << (depth + 1);
    std::vector<double> next(cells, 0.0);
    for (std::size_t x = 0; x < d.size(); ++x) next[x & (cells - 1)] += d[x];
    for (std::size_t s = 0; s < mass.size(); ++s) {
      nodes.push_back(mass[s] == 0.0 ? 0.5 : std::clamp(next[s] / mass[s], 0.0, 1.0));
    }
    mass = std::move(next);
  }
  return ConditionalTree(n, std::move(nodes));
}

Distribution reconstitute(const ConditionalTree& t) {
  const int n = t.depth();
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> probs(size, 1.0);
  const auto& nodes = t.nodes();
  for (std::size_t x = 0; x < size; ++x) {
    double p = 1.0;
    for (int depth = 0; depth < n; ++depth) {
      const std::size_t s = x & ((std::size_t{1} << depth) - 1);
      const double p0 = nodes[(std::size_t{1} << depth) - 1 + s];
      p *= ((x >> depth) & 1u) ? 1.0 - p0 : p0;
    }
    probs[x] = p;
  }
  return Distribution(std::move(probs));
}

Distribution marginalizeToPartition(const Distribution& d, const Partition& p) {
  if (p.domainSize() != d.size()) throw DomainError("partition and distribution domains differ");
  std::vector<double> out(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (auto x : p[i]) out[i] += d[x];
  }
  return Distribution(std::move(out));
}

nlohmann::json toJson(const Distribution& d) { return nlohmann::json(d.probs()); }

Distribution distributionFromJson(const nlohmann::json& j) {
  return Distribution(j.get<std::vector<double>>());
}

namespace {

nlohmann::json treeNodeJson(const ConditionalTree& t, int depth, std::size_t s) {
  nlohmann::json node;
  node["p0"] = t.nodes()[(std::size_t{1} << depth) - 1 + s];
  nlohmann::json children = nlohmann::json::array();
  if (depth + 1 < t.depth()) {
    children.push_back(treeNodeJson(t, depth + 1, s));
    children.push_back(treeNodeJson(t, depth + 1, s | (std::size_t{1} << depth)));
  }
  node["children"] = std::move(children);
  return node;
}

void readTreeNode(const nlohmann::json& j, int depth, std::size_t s, int n,
                  std::vector<double>& nodes) {
  nodes.at((std::size_t{1} << depth) - 1 + s) = j.at("p0").get<double>();
  const auto& children = j.at("children");
  if (depth + 1 < n) {
    if (children.size() != 2) throw DomainError("tree node needs two children");
    readTreeNode(children[0], depth + 1, s, n, nodes);
    readTreeNode(children[1], depth + 1, s | (std::size_t{1} << depth), n, nodes);
  } else if (!children.empty()) {
    throw DomainError("leaf tree node has children");
  }
}

int jsonTreeDepth(const nlohmann::json& j) {
  int depth = 1;
  const nlohmann::json* cur = &j;
  while (!cur->at("children").empty()) {
    cur = &cur->at("children")[0];
    ++depth;
  }
  return depth;
}

}  // namespace

nlohmann::json toJson(const ConditionalTree& t) {
  if (t.depth() == 0) return nullptr;
  return treeNodeJson(t, 0, 0);
}

ConditionalTree conditionalTreeFromJson(const nlohmann::json& j) {
  if (j.is_null()) return ConditionalTree(0);
  const int n = jsonTreeDepth(j);
  std::vector<double> nodes((std::size_t{1} << n) - 1, 0.5);
  readTreeNode(j, 0, 0, n, nodes);
  return ConditionalTree(n, std::move(nodes));
}

}  // namespace qrecon

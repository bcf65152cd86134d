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

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace qrecon {

class Partition;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kRenormalizeTolerance = 1e-9;

/// A probability vector. Construction renormalizes when the sum is within
/// 1e-9 of one and throws DomainError otherwise.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::vector<double> probs);

  static Distribution uniform(int n);
  static Distribution pointMass(int n, std::size_t outcome);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  /// log2 of the size; throws DomainError when the size is not a power of two.
  int width() const;

 private:
  std::vector<double> probs_;
};

/// Polar angle in [0, pi]; rho_0 = cos^2(theta/2).
class ThetaAngle {
 public:
  /// Values within 1e-12 of the range are clamped; others throw DomainError.
  explicit ThetaAngle(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// (cos^2(theta/2), sin^2(theta/2)). Accepts any real theta.
std::pair<double, double> probFromTheta(double theta);
inline std::pair<double, double> probFromTheta(ThetaAngle t) { return probFromTheta(t.value()); }

ThetaAngle thetaFromProb(double rho0);

/// rho(0) - rho(1) of a two-outcome distribution.
double sVariable(const Distribution& d);

/// Conditional probabilities of each bit given the less significant bits,
/// peeled from the least significant bit upward.
///
/// Node (l, s) with 1 <= l <= n holds P(bit l = 0 | bits l+1..n spell s),
/// s < 2^(n-l). Nodes are stored level by level starting with l = n at
/// index 0; node (l, s) lives at 2^(n-l) - 1 + s.
class ConditionalTree {
 public:
  ConditionalTree() = default;
  /// All nodes 1/2.
  explicit ConditionalTree(int n);
  ConditionalTree(int n, std::vector<double> nodes);

  int depth() const noexcept { return n_; }
  std::size_t nodeCount() const noexcept { return nodes_.size(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  std::size_t nodeIndex(int l, std::uint64_t suffix) const;
  double node(int l, std::uint64_t suffix) const { return nodes_[nodeIndex(l, suffix)]; }

  /// Same tree expressed through theta angles, node order preserved.
  std::vector<double> thetas() const;
  static ConditionalTree fromThetas(int n, const std::vector<double>& thetas);

 private:
  int n_ = 0;
  std::vector<double> nodes_;
};

/// Conditional factorization; zero-mass suffixes get 1/2.
ConditionalTree factorize(const Distribution& d);
Distribution reconstitute(const ConditionalTree& t);

/// Sums the mass of each set, in the partition's set order.
Distribution marginalizeToPartition(const Distribution& d, const Partition& p);

nlohmann::json toJson(const Distribution& d);
Distribution distributionFromJson(const nlohmann::json& j);
nlohmann::json toJson(const ConditionalTree& t);
ConditionalTree conditionalTreeFromJson(const nlohmann::json& j);

}  // namespace qrecon

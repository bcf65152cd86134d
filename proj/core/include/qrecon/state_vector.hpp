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

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qrecon/rng.hpp"

namespace qrecon {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Amplitudes psi_j = sqrt(rho_j) e^{i phi_j} over 2^n outcomes.
class StateVector {
 public:
  StateVector() = default;
  /// Throws DomainError unless sum |psi_j|^2 = 1 within 1e-12 (length must
  /// be a power of two).
  explicit StateVector(ComplexVector amps);

  /// Scales to unit norm; throws DomainError for the zero vector.
  static StateVector normalized(ComplexVector amps);
  static StateVector fromPolar(const std::vector<double>& rho, const std::vector<double>& phi);
  static StateVector basis(int n, std::size_t j);

  std::size_t size() const noexcept { return amps_.size(); }
  int width() const noexcept;
  const ComplexVector& amps() const noexcept { return amps_; }
  const Complex& operator[](std::size_t j) const { return amps_[j]; }

  std::vector<double> probabilities() const;
  /// arg(psi_j); 0 where psi_j = 0.
  std::vector<double> phases() const;

 private:
  ComplexVector amps_;
};

/// First-order perturbation d(psi) of a state.
struct Tangent {
  ComplexVector dAmps;
};

/// Tangent in probability/phase coordinates.
struct PolarTangent {
  std::vector<double> drho;
  std::vector<double> dphi;
};

Complex inner(const ComplexVector& a, const ComplexVector& b);
double norm2(const ComplexVector& a);

/// Re<psi|dpsi> == 0 within tol.
bool isNormPreserving(const StateVector& psi, const Tangent& d, double tol = 1e-10);

/// Removes the component of d that changes the norm to first order.
Tangent projectNormPreserving(const StateVector& psi, Tangent d);

/// drho_j = 2 Re(conj(psi_j) dpsi_j), dphi_j = Im(conj(psi_j) dpsi_j) / rho_j.
/// Where psi_j = 0 the phase is undefined: dphi_j = 0 is used when
/// dpsi_j = 0 and SingularityError is thrown otherwise.
PolarTangent decomposeTangent(const StateVector& psi, const Tangent& d);

/// Unit vector drawn uniformly on the complex sphere of dimension 2^n.
template <class Urbg>
StateVector randomState(int n, Urbg& g) {
  std::normal_distribution<double> gauss;
  ComplexVector a(std::size_t{1} << n);
  for (auto& z : a) z = Complex(gauss(g), gauss(g));
  return StateVector::normalized(std::move(a));
}

/// Gaussian tangent at psi, projected to preserve the norm.
template <class Urbg>
Tangent randomTangent(const StateVector& psi, Urbg& g) {
  std::normal_distribution<double> gauss;
  Tangent t{ComplexVector(psi.size())};
  for (auto& z : t.dAmps) z = Complex(gauss(g), gauss(g));
  return projectNormPreserving(psi, std::move(t));
}

nlohmann::json toJson(const StateVector& psi);
StateVector stateVectorFromJson(const nlohmann::json& j);

}  // namespace qrecon

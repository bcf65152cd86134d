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

#include "qrecon/state_vector.hpp"

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "qrecon/bits.hpp"
#include "qrecon/errors.hpp"

namespace qrecon {

StateVector::StateVector(ComplexVector amps) : amps_(std::move(amps)) {
  if (amps_.empty() || !isPowerOfTwo(amps_.size())) {
    throw DomainError("state length must be a power of two");
  }
  const double n2 = norm2(amps_);
  if (std::abs(n2 - 1.0) > 1e-12) {
    throw DomainError("state is not normalized: |psi|^2 = " + std::to_string(n2));
  }
}

StateVector StateVector::normalized(ComplexVector amps) {
  const double n2 = norm2(amps);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw DomainError("cannot normalize the zero vector");
  const double s = 1.0 / std::sqrt(n2);
  for (auto& z : amps) z *= s;
  return StateVector(std::move(amps));
}

StateVector StateVector::fromPolar(const std::vector<double>& rho, const std::vector<double>& phi) {
  if (rho.size() != phi.size()) throw DomainError("rho and phi lengths differ");
  ComplexVector a(rho.size());
  for (std::size_t j = 0; j < rho.size(); ++j) {
    if (rho[j] < 0.0) throw DomainError("negative probability");
    a[j] = std::polar(std::sqrt(rho[j]), phi[j]);
  }
  return StateVector(std::move(a));
}

StateVector StateVector::basis(int n, std::size_t j) {
  ComplexVector a(std::size_t{1} << n);
  if (j >= a.size()) throw DomainError("basis index outside domain");
  a[j] = 1.0;
  return StateVector(std::move(a));
}

int StateVector::width() const noexcept { return log2Exact(amps_.size()); }

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = std::norm(amps_[j]);
  return p;
}

std::vector<double> StateVector::phases() const {
  std::vector<double> p(amps_.size());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = amps_[j] == Complex{} ? 0.0 : std::arg(amps_[j]);
  return p;
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw DomainError("inner product of vectors of different length");
  Complex s{};
  for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a[j]) * b[j];
  return s;
}

double norm2(const ComplexVector& a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return s;
}

bool isNormPreserving(const StateVector& psi, const Tangent& d, double tol) {
  return std::abs(inner(psi.amps(), d.dAmps).real()) <= tol;
}

Tangent projectNormPreserving(const StateVector& psi, Tangent d) {
  const double re = inner(psi.amps(), d.dAmps).real();
  for (std::size_t j = 0; j < d.dAmps.size(); ++j) d.dAmps[j] -= re * psi[j];
  return d;
}

PolarTangent decomposeTangent(const StateVector& psi, const Tangent& d) {
  if (d.dAmps.size() != psi.size()) throw DomainError("tangent length differs from state");
  PolarTangent out{std::vector<double>(psi.size()), std::vector<double>(psi.size())};
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double rho = std::norm(psi[j]);
    if (rho == 0.0) {
      if (d.dAmps[j] != Complex{}) {
        throw SingularityError("tangent moves zero-mass component " + std::to_string(j) +
                               " where the phase is undefined");
      }
      continue;
    }
    const Complex w = std::conj(psi[j]) * d.dAmps[j];
    out.drho[j] = 2.0 * w.real();
    out.dphi[j] = w.imag() / rho;
  }
  return out;
}

nlohmann::json toJson(const StateVector& psi) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& z : psi.amps()) arr.push_back({z.real(), z.imag()});
  return arr;
}

StateVector stateVectorFromJson(const nlohmann::json& j) {
  ComplexVector a;
  for (const auto& z : j) a.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  return StateVector(std::move(a));
}

}  // namespace qrecon

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

#include "qrecon/butterfly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "qrecon/bits.hpp"
#include "qrecon/errors.hpp"
#include "qrecon/parallel.hpp"

namespace qrecon {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr int kMaxLevels = 26;

void requireLevels(int n) {
  if (n < 1 || n > kMaxLevels) throw DomainError("butterfly levels must lie in [1, 26]");
}

void requireLength(int n, std::size_t len) {
  if (len != (std::size_t{1} << n)) throw DomainError("vector length does not match 2^n");
}

// One cell of stage l, optionally followed by the twiddle of the second entry.
inline void cell(Complex* v, std::size_t i, std::size_t j, const Complex* w) {
  const Complex a = v[i];
  const Complex b = v[j];
  v[i] = (a + b) * kInvSqrt2;
  v[j] = (a - b) * kInvSqrt2;
  if (w) v[j] *= w[j];
}

// Pairs [p0, p1) of stage l; pair p sits in block p / half at offset p % half.
void stageRange(Complex* v, std::size_t half, std::size_t p0, std::size_t p1, const Complex* w) {
  for (std::size_t p = p0; p < p1; ++p) {
    const std::size_t i = (p / half) * 2 * half + p % half;
    cell(v, i, i + half, w);
  }
}

ComplexVector inverseDftRecursive(const ComplexVector& x) {
  const std::size_t N = x.size();
  if (N == 1) return x;
  ComplexVector even(N / 2), odd(N / 2);
  for (std::size_t j = 0; j < N / 2; ++j) {
    even[j] = x[2 * j];
    odd[j] = x[2 * j + 1];
  }
  const ComplexVector E = inverseDftRecursive(even);
  const ComplexVector O = inverseDftRecursive(odd);
  ComplexVector out(N);
  for (std::size_t j = 0; j < N / 2; ++j) {
    const Complex W = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(N));
    out[j] = E[j] + W * O[j];
    out[j + N / 2] = E[j] - W * O[j];
  }
  return out;
}

}  // namespace

std::uint64_t nodePosition(int n, int l, std::uint64_t x, std::uint64_t y) {
  if (n < 1 || n > 62) throw DomainError("nodePosition: n out of range");
  if (l < 0 || l > n) throw DomainError("nodePosition: level out of range");
  const std::uint64_t N = std::uint64_t{1} << n;
  if (x >= N || y >= N) throw DomainError("nodePosition: index outside domain");
  const std::uint64_t yLow = y & ((std::uint64_t{1} << l) - 1);
  const std::uint64_t xLow = x & ((std::uint64_t{1} << (n - l)) - 1);
  return (bitReverse(yLow, l) << (n - l)) | xLow;
}

ShiftPhases deriveShiftPhases(int l) {
  if (l < 1 || l > kMaxLevels) throw DomainError("deriveShiftPhases: level out of range");
  std::vector<double> s{0.0, -kPi};
  for (int level = 2; level <= l; ++level) {
    const std::size_t half = s.size();
    std::vector<double> next(2 * half);
    for (std::size_t k = 0; k < half; ++k) {
      next[k] = s[k] / 2.0;
      next[k + half] = next[k] - kPi;
    }
    s = std::move(next);
  }
  return ShiftPhases{l, std::move(s)};
}

double shiftPhaseClosedForm(int l, std::uint64_t k) {
  return -2.0 * kPi * static_cast<double>(k) / std::ldexp(1.0, l);
}

double twiddlePhase(int n, int lp, std::uint64_t k) {
  if (n < 2 || n > kMaxLevels) throw DomainError("twiddlePhase: n out of range");
  if (lp < 1 || lp > n - 1) throw DomainError("twiddlePhase: l' must lie in [1, n-1]");
  if (k >= (std::uint64_t{1} << n)) throw DomainError("twiddlePhase: k outside domain");
  const std::uint64_t L = std::uint64_t{1} << (n - lp + 1);
  const std::uint64_t r = k % L;
  if (r < L / 2) return 0.0;
  return -2.0 * kPi * static_cast<double>(r - L / 2) / static_cast<double>(L);
}

TwiddleStage deriveTwiddleStage(int n, int lp, TwiddleSign sign) {
  requireLevels(n);
  if (lp < 1 || lp > n - 1) throw DomainError("deriveTwiddleStage: l' must lie in [1, n-1]");
  const int sub = n - lp + 1;
  const ShiftPhases s = deriveShiftPhases(sub);
  const std::size_t N = std::size_t{1} << n;
  const std::size_t L = std::size_t{1} << sub;
  TwiddleStage t{lp, std::vector<double>(N, 0.0)};
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t r = k % L;
    if (r >= L / 2) {
      const double phi = s.values[r - L / 2];
      t.phases[k] = sign == TwiddleSign::minus ? phi : -phi;
    }
  }
  return t;
}

ButterflyPlan::ButterflyPlan(int n, TwiddleSign sign) : n_(n), sign_(sign) {
  requireLevels(n);
  for (int lp = 1; lp < n; ++lp) {
    twiddles_.push_back(deriveTwiddleStage(n, lp, sign));
    ComplexVector f(size());
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::polar(1.0, twiddles_.back().phases[k]);
    factors_.push_back(std::move(f));
  }
}

Eigen::MatrixXcd stageMatrix(int n, int l) {
  requireLevels(n);
  if (l < 1 || l > n) throw DomainError("stageMatrix: level out of range");
  const auto N = static_cast<Eigen::Index>(std::size_t{1} << n);
  const Eigen::Index half = N >> l;
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(N, N);
  for (Eigen::Index b = 0; b < N; b += 2 * half) {
    for (Eigen::Index k = b; k < b + half; ++k) {
      F(k, k) = kInvSqrt2;
      F(k, k + half) = kInvSqrt2;
      F(k + half, k) = kInvSqrt2;
      F(k + half, k + half) = -kInvSqrt2;
    }
  }
  return F;
}

void applyStage(int n, int l, std::span<Complex> v) {
  requireLevels(n);
  requireLength(n, v.size());
  if (l < 1 || l > n) throw DomainError("applyStage: level out of range");
  const std::size_t half = v.size() >> l;
  stageRange(v.data(), half, 0, v.size() / 2, nullptr);
}

void applyTwiddle(const ButterflyPlan& plan, int lp, std::span<Complex> v) {
  requireLength(plan.levels(), v.size());
  const ComplexVector& w = plan.twiddleFactors(lp);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] *= w[k];
}

void bitReversePermute(std::span<Complex> v) {
  if (!isPowerOfTwo(v.size())) throw DomainError("bit reversal needs a power-of-two length");
  const int n = log2Exact(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t j = bitReverse(i, n);
    if (j > i) std::swap(v[i], v[j]);
  }
}

void applyButterflyAdjointInPlace(const ButterflyPlan& plan, std::span<Complex> v, OutputOrder order) {
  const int n = plan.levels();
  requireLength(n, v.size());
  if (order == OutputOrder::natural) bitReversePermute(v);
  // every stage is a real symmetric involution
  for (int l = n; l >= 1; --l) {
    if (l < n) {
      const ComplexVector& w = plan.twiddleFactors(l);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] *= std::conj(w[k]);
    }
    applyStage(n, l, v);
  }
}

Eigen::MatrixXcd assembleTransform(int n, OutputOrder order, TwiddleSign sign) {
  const ButterflyPlan plan(n, sign);
  const auto N = static_cast<Eigen::Index>(plan.size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(N, N);
  for (Eigen::Index c = 0; c < N; ++c) {
    std::span<Complex> col(M.col(c).data(), static_cast<std::size_t>(N));
    for (int l = 1; l <= n; ++l) {
      applyStage(n, l, col);
      if (l < n) applyTwiddle(plan, l, col);
    }
    if (order == OutputOrder::natural) bitReversePermute(col);
  }
  return M;
}

void applyButterflyInPlace(const ButterflyPlan& plan, std::span<Complex> v, OutputOrder order,
                           ExecutionMode mode, unsigned workers) {
  const int n = plan.levels();
  requireLength(n, v.size());
  const std::size_t pairs = v.size() / 2;
  if (mode == ExecutionMode::forkJoin && workers == 0) workers = threadCount();
  for (int l = 1; l <= n; ++l) {
    const std::size_t half = v.size() >> l;
    const Complex* w = l < n ? plan.twiddleFactors(l).data() : nullptr;
    if (mode == ExecutionMode::serial || workers <= 1) {
      stageRange(v.data(), half, 0, pairs, w);
    } else {
      const std::size_t chunks = std::min<std::size_t>(workers, pairs);
      const std::size_t per = (pairs + chunks - 1) / chunks;
      parallelFor(
          chunks,
          [&](std::size_t c) {
            stageRange(v.data(), half, c * per, std::min(pairs, (c + 1) * per), w);
          },
          workers);
    }
  }
  if (order == OutputOrder::natural) bitReversePermute(v);
}

StateVector applyButterfly(const ButterflyPlan& plan, const StateVector& psi, OutputOrder order,
                           ExecutionMode mode) {
  ComplexVector v = psi.amps();
  applyButterflyInPlace(plan, v, order, mode);
  return StateVector::normalized(std::move(v));
}

Eigen::MatrixXcd dftMatrix(std::size_t N, int sign) {
  if (N == 0 || !isPowerOfTwo(N)) throw DomainError("dftMatrix: N must be a power of two");
  if (sign != 1 && sign != -1) throw DomainError("dftMatrix: sign must be +1 or -1");
  const auto n = static_cast<Eigen::Index>(N);
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  Eigen::MatrixXcd D(n, n);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = 0; k < N; ++k) {
      const double angle = sign * 2.0 * kPi * static_cast<double>((j * k) % N) / static_cast<double>(N);
      D(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = std::polar(scale, angle);
    }
  }
  return D;
}

double DanielsonLanczosReport::maxDeviation() const noexcept {
  return std::max({cellDeviation, recursionDeviation, inverseDeviation, halfPeriodDeviation});
}

DanielsonLanczosReport verifyDanielsonLanczos(int n) {
  if (n < 2 || n > 12) throw DomainError("verifyDanielsonLanczos: n must lie in [2, 12]");
  DanielsonLanczosReport rep;
  rep.n = n;
  const std::size_t N = std::size_t{1} << n;
  const auto h = static_cast<Eigen::Index>(N / 2);
  const ButterflyPlan plan(n);

  // F_1 t_1^*: conjugated twiddles first, then the first stage
  const ComplexVector& w = plan.twiddleFactors(1);
  Eigen::VectorXcd wc(static_cast<Eigen::Index>(N));
  for (std::size_t k = 0; k < N; ++k) wc[static_cast<Eigen::Index>(k)] = std::conj(w[k]);
  const Eigen::MatrixXcd cellOp = stageMatrix(n, 1) * wc.asDiagonal();
  for (Eigen::Index j = 0; j < h; ++j) {
    const Complex W = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(N));
    const Complex Wh = std::polar(1.0, 2.0 * kPi * static_cast<double>(j + h) / static_cast<double>(N));
    Eigen::Matrix2cd got;
    got << cellOp(j, j), cellOp(j, j + h), cellOp(j + h, j), cellOp(j + h, j + h);
    got *= std::numbers::sqrt2;
    Eigen::Matrix2cd want;
    want << 1.0, W, 1.0, -W;
    rep.cellDeviation = std::max(rep.cellDeviation, (got - want).cwiseAbs().maxCoeff());
    rep.halfPeriodDeviation = std::max(rep.halfPeriodDeviation, std::abs(Wh + W));
  }

  const Eigen::MatrixXcd Dplus = dftMatrix(N, +1);
  Eigen::MatrixXcd R(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  for (std::size_t c = 0; c < N; ++c) {
    ComplexVector e(N);
    e[c] = 1.0;
    const ComplexVector col = inverseDftRecursive(e);
    for (std::size_t r = 0; r < N; ++r) {
      R(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r] * scale;
    }
  }
  rep.recursionDeviation = maxAbsDiff(R, Dplus);
  rep.inverseDeviation = maxAbsDiff(assembleTransform(n, OutputOrder::natural).adjoint(), Dplus);
  return rep;
}

ChainResult chainPropagate(const StateVector& psiQ, TwiddleSign sign) {
  const int n = psiQ.width();
  const ButterflyPlan plan(n, sign);
  ChainResult out;
  out.n = n;
  ComplexVector v = psiQ.amps();
  const auto moduli = [&] {
    std::vector<double> p(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) p[k] = std::norm(v[k]);
    return p;
  };
  out.levels.emplace_back(moduli());
  for (int l = 1; l <= n; ++l) {
    applyStage(n, l, v);
    if (l < n) applyTwiddle(plan, l, v);
    std::vector<double> p = moduli();
    const std::size_t half = v.size() >> l;
    std::vector<double> cond(v.size(), 0.5);
    for (std::size_t b = 0; b < v.size(); b += 2 * half) {
      for (std::size_t k = b; k < b + half; ++k) {
        const double parent = p[k] + p[k + half];
        if (parent > 0.0) {
          cond[k] = p[k] / parent;
          cond[k + half] = p[k + half] / parent;
        }
      }
    }
    out.levels.emplace_back(std::move(p));
    out.conditionals.push_back(std::move(cond));
  }
  return out;
}

double chainCoherenceDeviation(const ChainResult& chain) {
  double worst = 0.0;
  for (int l = 1; l <= chain.n; ++l) {
    const Distribution& before = chain.levels[static_cast<std::size_t>(l - 1)];
    const Distribution& after = chain.levels[static_cast<std::size_t>(l)];
    const std::size_t half = before.size() >> l;
    for (std::size_t b = 0; b < before.size(); b += 2 * half) {
      for (std::size_t k = b; k < b + half; ++k) {
        const double lhs = before[k] + before[k + half];
        const double rhs = after[k] + after[k + half];
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  return worst;
}

ShiftOperatorReport shiftOperatorCheck(int n) {
  if (n < 1 || n > 12) throw DomainError("shiftOperatorCheck: n must lie in [1, 12]");
  ShiftOperatorReport rep;
  rep.n = n;
  const Eigen::MatrixXcd F = assembleTransform(n, OutputOrder::natural);
  const Eigen::Index N = F.rows();
  const ButterflyPlan plan(n);
  // D = F^dagger S F, one column at a time
  Eigen::MatrixXcd D(N, N);
  ComplexVector v(static_cast<std::size_t>(N));
  for (Eigen::Index k = 0; k < N; ++k) {
    for (Eigen::Index p = 0; p < N; ++p) v[static_cast<std::size_t>(p)] = F((p + 1) % N, k);
    applyButterflyAdjointInPlace(plan, v, OutputOrder::natural);
    for (Eigen::Index p = 0; p < N; ++p) D(p, k) = v[static_cast<std::size_t>(p)];
  }
  const ShiftPhases s = deriveShiftPhases(n);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) {
      if (i == j) {
        const Complex want = std::polar(1.0, s.values[static_cast<std::size_t>(i)]);
        rep.diagonalDeviation = std::max(rep.diagonalDeviation, std::abs(D(i, i) - want));
        rep.phases.push_back(std::arg(D(i, i)));
      } else {
        rep.offDiagonalMax = std::max(rep.offDiagonalMax, std::abs(D(i, j)));
      }
    }
  }
  return rep;
}

double maxAbsDiff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix shapes differ");
  return (a - b).cwiseAbs().maxCoeff();
}

double unitarityDeviation(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return (u * u.adjoint() - I).cwiseAbs().maxCoeff();
}

nlohmann::json toJson(const ButterflyPlan& plan) {
  nlohmann::json tw = nlohmann::json::array();
  for (const auto& t : plan.twiddles()) tw.push_back({{"level", t.level}, {"phases", t.phases}});
  return nlohmann::json{{"n", plan.levels()},
                        {"sign", plan.sign() == TwiddleSign::minus ? "minus" : "plus"},
                        {"stageNormalization", "1/sqrt(2) per stage"},
                        {"twiddles", std::move(tw)}};
}

nlohmann::json toJson(const DanielsonLanczosReport& r) {
  return nlohmann::json{{"n", r.n},
                        {"normalization", "cell compared unnormalized (x sqrt2); matrices 1/sqrt(N)"},
                        {"cellDeviation", r.cellDeviation},
                        {"recursionDeviation", r.recursionDeviation},
                        {"inverseDeviation", r.inverseDeviation},
                        {"halfPeriodDeviation", r.halfPeriodDeviation}};
}

nlohmann::json toJson(const ShiftOperatorReport& r) {
  return nlohmann::json{{"n", r.n},
                        {"diagonalDeviation", r.diagonalDeviation},
                        {"offDiagonalMax", r.offDiagonalMax},
                        {"phases", r.phases}};
}

}  // namespace qrecon

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

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "qrecon/prob_model.hpp"
#include "qrecon/state_vector.hpp"

namespace qrecon {

// Stage l (1..n) acts inside contiguous blocks of size L = 2^(n-l+1),
// mixing entries k and k + L/2 of each block through the cell
// (1/sqrt 2)[[1, 1], [1, -1]]. Twiddle stage l' (1..n-1) follows stage l'
// and multiplies entry k by e^{i phi}, phi = 0 on the first half of every
// block of size 2^(n-l'+1).

enum class OutputOrder { bitReversed, natural };

/// Sign of the shift phases the twiddles are built from. `minus` makes the
/// assembled transform the forward DFT e^{-2 pi i jk/N}/sqrt N, whose inverse
/// is the e^{+2 pi i jk/N} transform taking p amplitudes back to q.
enum class TwiddleSign { minus, plus };

enum class ExecutionMode { serial, forkJoin };

/// s_(l)^k for k in [0, 2^l).
struct ShiftPhases {
  int level = 0;
  std::vector<double> values;
};

struct TwiddleStage {
  int level = 0;               // l'
  std::vector<double> phases;  // length 2^n
};

/// mu = [y_n ... y_{n+1-l}, x_{l+1} ... x_n] (bit 1 = MSB): the top l bits
/// are the l least significant bits of y in reverse order, the low n - l
/// bits are those of x. Throws DomainError on out-of-range input.
std::uint64_t nodePosition(int n, int l, std::uint64_t x, std::uint64_t y);

/// Solves s_(1) = (0, -pi), s_(l)^k = s_(l-1)^k / 2 for k < 2^(l-1),
/// s_(l)^(k + 2^(l-1)) = s_(l)^k - pi.
ShiftPhases deriveShiftPhases(int l);

/// -2 pi k / 2^l.
double shiftPhaseClosedForm(int l, std::uint64_t k);

/// Piecewise closed form of the twiddle phase. Throws DomainError unless
/// 1 <= l' <= n-1 and k < 2^n.
double twiddlePhase(int n, int lp, std::uint64_t k);

/// Twiddle stage l' obtained from the shift phases: zero on the first half
/// of each block, s_(n-l'+1)^r at offset r of the second half.
TwiddleStage deriveTwiddleStage(int n, int lp, TwiddleSign sign = TwiddleSign::minus);

class ButterflyPlan {
 public:
  explicit ButterflyPlan(int n, TwiddleSign sign = TwiddleSign::minus);

  int levels() const noexcept { return n_; }
  std::size_t size() const noexcept { return std::size_t{1} << n_; }
  TwiddleSign sign() const noexcept { return sign_; }
  /// n - 1 stages, index i holds l' = i + 1.
  const std::vector<TwiddleStage>& twiddles() const noexcept { return twiddles_; }
  /// e^{i phi} of twiddle stage l' (1-based).
  const ComplexVector& twiddleFactors(int lp) const { return factors_.at(static_cast<std::size_t>(lp - 1)); }

 private:
  int n_;
  TwiddleSign sign_;
  std::vector<TwiddleStage> twiddles_;
  std::vector<ComplexVector> factors_;
};

/// Dense matrix of stage l.
Eigen::MatrixXcd stageMatrix(int n, int l);
/// In-place action of stage l on a length-2^n vector.
void applyStage(int n, int l, std::span<Complex> v);
/// In-place action of twiddle stage l' of the plan.
void applyTwiddle(const ButterflyPlan& plan, int lp, std::span<Complex> v);

/// F_n t_{n-1} ... t_1 F_1 as a dense matrix; `natural` appends the
/// bit-reversal permutation of the output.
Eigen::MatrixXcd assembleTransform(int n, OutputOrder order = OutputOrder::bitReversed,
                                   TwiddleSign sign = TwiddleSign::minus);

/// O(N log N) in-place evaluation of the plan. Both modes produce
/// bit-identical results.
void applyButterflyInPlace(const ButterflyPlan& plan, std::span<Complex> v,
                           OutputOrder order = OutputOrder::bitReversed,
                           ExecutionMode mode = ExecutionMode::serial, unsigned workers = 0);

StateVector applyButterfly(const ButterflyPlan& plan, const StateVector& psi,
                           OutputOrder order = OutputOrder::bitReversed,
                           ExecutionMode mode = ExecutionMode::serial);

void bitReversePermute(std::span<Complex> v);

/// Applies the adjoint (= inverse) of the transform in place: stages run in
/// reverse with conjugated twiddles. `order` names the layout of the input.
void applyButterflyAdjointInPlace(const ButterflyPlan& plan, std::span<Complex> v,
                                  OutputOrder order = OutputOrder::bitReversed);

/// e^{sign 2 pi i jk/N} / sqrt N. Throws DomainError unless N is a power of two.
Eigen::MatrixXcd dftMatrix(std::size_t N, int sign);

struct DanielsonLanczosReport {
  int n = 0;
  /// max over j of |sqrt2 (F_1 t_1^*)[(j, j+N/2) block] - [[1, W^j], [1, -W^j]]|,
  /// W^j = e^{2 pi i j/N}
  double cellDeviation = 0.0;
  /// unnormalized even/odd recursion vs sqrt N dftMatrix(N, +1)
  double recursionDeviation = 0.0;
  /// inverse of the assembled natural-order transform vs dftMatrix(N, +1)
  double inverseDeviation = 0.0;
  /// max |W^{j+N/2} + W^j|
  double halfPeriodDeviation = 0.0;
  double maxDeviation() const noexcept;
};

DanielsonLanczosReport verifyDanielsonLanczos(int n);

struct ChainResult {
  int n = 0;
  /// levels[l], l = 0..n: squared moduli after stage l and its twiddle;
  /// entry mu = nodePosition(n, l, x, y).
  std::vector<Distribution> levels;
  /// conditionals[l-1][k]: share of entry k in its stage-l pair at level l,
  /// 1/2 when the pair carries no mass.
  std::vector<std::vector<double>> conditionals;
};

ChainResult chainPropagate(const StateVector& psiQ, TwiddleSign sign = TwiddleSign::minus);

/// max |(parent pair mass at level l-1) - (same pair at level l)| over all
/// stage pairs and levels.
double chainCoherenceDeviation(const ChainResult& chain);

struct ShiftOperatorReport {
  int n = 0;
  double diagonalDeviation = 0.0;     // vs e^{i s_(n)^k}
  double offDiagonalMax = 0.0;
  std::vector<double> phases;         // arg of the diagonal
  double maxDeviation() const noexcept { return std::max(diagonalDeviation, offDiagonalMax); }
};

/// Conjugates the cyclic shift (S psi)(p) = psi(p + 1 mod N) by the
/// natural-order transform and compares with diag(e^{-2 pi i k/N}).
ShiftOperatorReport shiftOperatorCheck(int n);

double maxAbsDiff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
double unitarityDeviation(const Eigen::MatrixXcd& u);

nlohmann::json toJson(const ButterflyPlan& plan);
nlohmann::json toJson(const DanielsonLanczosReport& r);
nlohmann::json toJson(const ShiftOperatorReport& r);

}  // namespace qrecon

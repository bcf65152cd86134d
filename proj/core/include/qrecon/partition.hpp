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
#include <functional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace qrecon {

// Bits are indexed from 1 = most significant to n = least significant.

/// The set of width-n values whose bits lo..hi spell `pattern`
/// (pattern's MSB sits at bit lo).
struct DigitSubsetSet {
  int width = 0;
  int lo = 1;
  int hi = 1;
  std::uint64_t pattern = 0;

  /// Validating constructor; throws DomainError on bad indices or pattern.
  static DigitSubsetSet make(int width, int lo, int hi, std::uint64_t pattern);

  int length() const noexcept { return hi - lo + 1; }
  bool contains(std::uint64_t x) const noexcept;
  std::vector<std::uint32_t> members() const;

  bool operator==(const DigitSubsetSet&) const = default;
};

/// A family of disjoint sets covering {0, ..., 2^n - 1}. Stored canonically:
/// members sorted within each set, sets sorted by smallest member.
class Partition {
 public:
  using Element = std::uint32_t;
  using Block = std::vector<Element>;

  Partition() = default;
  /// Throws DomainError unless the blocks are nonempty, disjoint and cover
  /// the domain exactly.
  Partition(int width, std::vector<Block> blocks);

  static Partition fromDigitSets(int width, std::span<const DigitSubsetSet> sets);
  static Partition singletons(int width);
  static Partition whole(int width);
  /// Builds from one bitmask per block (width <= 5).
  static Partition fromMasks(int width, std::span<const std::uint32_t> masks);

  int width() const noexcept { return width_; }
  std::size_t domainSize() const noexcept { return std::size_t{1} << width_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const Block& operator[](std::size_t i) const { return blocks_[i]; }

  /// Index of the block holding x.
  std::size_t blockOf(Element x) const;
  /// Power-of-two number of blocks.
  bool isDyadic() const noexcept;
  bool hasEqualBlocks() const noexcept;
  /// Every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;

  bool operator==(const Partition&) const = default;

 private:
  int width_ = 0;
  std::vector<Block> blocks_;
  std::vector<std::uint32_t> owner_;
};

/// A set in (q, p) phase space: the conjunction of a q-constraint and an
/// independent p-constraint.
struct PhaseSpaceSet {
  DigitSubsetSet q;
  DigitSubsetSet p;

  bool contains(std::uint64_t qv, std::uint64_t pv) const noexcept {
    return q.contains(qv) && p.contains(pv);
  }
  /// l + l', the pair of lowest constrained bit indices.
  int levelSum() const noexcept { return q.lo + p.lo; }

  bool operator==(const PhaseSpaceSet&) const = default;
};

/// Sets whose q-bits l..n match the low bits of x and p-bits l'..n match
/// the low bits of y.
PhaseSpaceSet makePhaseSpaceSet(int n, int l, int lp, std::uint64_t x, std::uint64_t y);

/// Partition into 2^(n-l+1) sets fixing bits l..n, i.e. the low n-l+1 bits.
Partition makeLsbPartition(int n, int l);

/// Image of every element under x -> x + k mod 2^n.
Partition applyShift(const Partition& p, std::int64_t k);

bool isInvariantUnderShift(const Partition& p);

/// Product of all equal-half two-set coarsenings shared by a and b.
Partition finestCommonPartition(const Partition& a, const Partition& b);

/// Moves the q-constraint one bit toward significance and the p-constraint
/// one bit away from it. The p-bit pushed past position n is dropped.
/// Throws RangeError when q.lo == 1 or p.lo == n.
PhaseSpaceSet scaleTransformSet(const PhaseSpaceSet& s);

/// All partitions of the 2^n domain into two equal halves; n <= 4.
std::vector<Partition> enumerateBinaryPartitions(int n);

/// Visits every partition of the 2^n domain into `blockCount` equal blocks,
/// one bitmask per block, blocks ordered by smallest member. n <= 4.
void forEachEqualPartition(int n, std::size_t blockCount,
                           const std::function<void(std::span<const std::uint32_t>)>& visit);

struct ShiftAuditLevel {
  int c = 0;                       // 2^c blocks
  std::uint64_t candidates = 0;    // equal-size partitions examined
  std::uint64_t invariant = 0;     // shift-invariant among them
  bool lsbInvariant = false;       // makeLsbPartition(n, n-c+1) found invariant
  std::vector<Partition> counterexamples;  // invariant but not lsb-form
};

/// Exhaustive check that shift-invariant equal-size 2^c partitions are
/// exactly the lsb partitions, for every c in 0..n. n <= 4.
std::vector<ShiftAuditLevel> auditShiftInvariance(int n);

nlohmann::json toJson(const Partition& p);
Partition partitionFromJson(const nlohmann::json& j);
nlohmann::json toJson(const DigitSubsetSet& s);
nlohmann::json toJson(const PhaseSpaceSet& s);

}  // namespace qrecon

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

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "qrecon/errors.hpp"
#include "qrecon/partition.hpp"

namespace qrecon {
namespace {

using Blocks = std::vector<Partition::Block>;

std::set<Partition::Block> asSet(const Partition& p) {
  return {p.blocks().begin(), p.blocks().end()};
}

// Oracle: product of every equal half that both partitions refine.
Partition bruteFinestCommon(const Partition& a, const Partition& b) {
  const int n = a.width();
  std::vector<std::uint64_t> label(a.domainSize(), 0);
  for (const auto& h : enumerateBinaryPartitions(n)) {
    if (!a.refines(h) || !b.refines(h)) continue;
    for (std::size_t x = 0; x < label.size(); ++x) {
      label[x] = 2 * label[x] + h.blockOf(static_cast<Partition::Element>(x));
    }
  }
  std::map<std::uint64_t, Partition::Block> g;
  for (std::size_t x = 0; x < label.size(); ++x) g[label[x]].push_back(static_cast<Partition::Element>(x));
  Blocks blocks;
  for (auto& [k, v] : g) blocks.push_back(v);
  return Partition(n, blocks);
}

std::uint64_t factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

// Number of ways to split N items into m unlabeled blocks of equal size s.
std::uint64_t equalPartitionCount(int N, int m) {
  const int s = N / m;
  std::uint64_t count = 1;
  int left = N;
  for (int b = 0; b < m; ++b) {
    // choose s-1 companions for the smallest remaining element
    std::uint64_t c = 1;
    for (int i = 0; i < s - 1; ++i) c = c * (left - 1 - i) / (i + 1);
    count *= c;
    left -= s;
  }
  return count;
}

TEST(DigitSubsetSet, MembershipUsesMostSignificantFirstIndexing) {
  const auto s = DigitSubsetSet::make(3, 1, 1, 1);  // MSB set
  EXPECT_EQ(s.members(), (std::vector<std::uint32_t>{4, 5, 6, 7}));
  const auto t = DigitSubsetSet::make(3, 2, 3, 0b01);
  EXPECT_EQ(t.members(), (std::vector<std::uint32_t>{1, 5}));
}

TEST(DigitSubsetSet, RejectsBadIndices) {
  EXPECT_THROW(DigitSubsetSet::make(3, 0, 2, 0), DomainError);
  EXPECT_THROW(DigitSubsetSet::make(3, 2, 1, 0), DomainError);
  EXPECT_THROW(DigitSubsetSet::make(3, 2, 4, 0), DomainError);
  EXPECT_THROW(DigitSubsetSet::make(3, 2, 3, 4), DomainError);
}

TEST(Partition, RejectsOverlapGapAndEmpty) {
  EXPECT_THROW(Partition(2, Blocks{{0, 1}, {1, 2, 3}}), DomainError);
  EXPECT_THROW(Partition(2, Blocks{{0, 1}, {2}}), DomainError);
  EXPECT_THROW(Partition(2, Blocks{{0, 1, 2, 3}, {}}), DomainError);
  EXPECT_THROW(Partition(2, Blocks{{0, 1, 2, 3, 4}}), DomainError);
}

TEST(Partition, CanonicalOrderMakesEqualityStructural) {
  EXPECT_EQ(Partition(2, Blocks{{3, 2}, {1, 0}}), Partition(2, Blocks{{0, 1}, {2, 3}}));
}

TEST(LsbPartition, Examples) {
  EXPECT_EQ(makeLsbPartition(3, 3), Partition(3, Blocks{{0, 2, 4, 6}, {1, 3, 5, 7}}));
  EXPECT_EQ(makeLsbPartition(3, 1), Partition::singletons(3));
  EXPECT_EQ(makeLsbPartition(3, 2), Partition(3, Blocks{{0, 4}, {1, 5}, {2, 6}, {3, 7}}));
}

TEST(LsbPartition, SetCountAndSize) {
  for (int n = 1; n <= 6; ++n) {
    for (int l = 1; l <= n; ++l) {
      const auto p = makeLsbPartition(n, l);
      EXPECT_EQ(p.size(), std::size_t{1} << (n - l + 1));
      for (const auto& b : p.blocks()) EXPECT_EQ(b.size(), std::size_t{1} << (l - 1));
    }
  }
}

TEST(LsbPartition, MatchesDigitSets) {
  const int n = 4, l = 2;
  std::vector<DigitSubsetSet> sets;
  for (std::uint64_t mu = 0; mu < 8; ++mu) sets.push_back(DigitSubsetSet::make(n, l, n, mu));
  EXPECT_EQ(Partition::fromDigitSets(n, sets), makeLsbPartition(n, l));
}

TEST(LsbPartition, RejectsLevelOutOfRange) {
  EXPECT_THROW(makeLsbPartition(3, 0), DomainError);
  EXPECT_THROW(makeLsbPartition(3, 4), DomainError);
}

TEST(ApplyShift, Examples) {
  const auto parity = makeLsbPartition(3, 3);
  EXPECT_EQ(asSet(applyShift(parity, 1)), asSet(Partition(3, Blocks{{1, 3, 5, 7}, {0, 2, 4, 6}})));

  const Partition msb(2, Blocks{{0, 1}, {2, 3}});
  const auto shifted = applyShift(msb, 1);
  EXPECT_EQ(asSet(shifted), asSet(Partition(2, Blocks{{1, 2}, {3, 0}})));
  EXPECT_NE(shifted, msb);

  EXPECT_EQ(applyShift(msb, 4), msb);
  EXPECT_EQ(applyShift(msb, -1), applyShift(msb, 3));
}

TEST(ShiftInvariance, Examples) {
  EXPECT_TRUE(isInvariantUnderShift(makeLsbPartition(3, 3)));
  EXPECT_FALSE(isInvariantUnderShift(Partition(2, Blocks{{0, 1}, {2, 3}})));
  EXPECT_TRUE(isInvariantUnderShift(Partition::singletons(3)));
  EXPECT_TRUE(isInvariantUnderShift(Partition::whole(3)));
}

TEST(FinestCommonPartition, Examples) {
  const Partition msb(2, Blocks{{0, 1}, {2, 3}});
  const Partition lsb(2, Blocks{{0, 2}, {1, 3}});
  EXPECT_EQ(finestCommonPartition(msb, lsb), Partition::whole(2));
  EXPECT_EQ(bruteFinestCommon(msb, lsb), Partition::whole(2));

  const auto b = makeLsbPartition(3, 2);
  EXPECT_EQ(finestCommonPartition(Partition::singletons(3), b), b);
  EXPECT_EQ(finestCommonPartition(b, b), b);
}

TEST(FinestCommonPartition, UnequalCommonCoarseningUsesSharedHalves) {
  const Partition a(3, Blocks{{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  const Partition b(3, Blocks{{0, 2}, {1, 3}, {4, 5}, {6, 7}});
  const Partition want(3, Blocks{{0, 1, 2, 3}, {4, 5, 6, 7}});
  EXPECT_EQ(finestCommonPartition(a, b), want);
  EXPECT_EQ(bruteFinestCommon(a, b), want);
}

TEST(FinestCommonPartition, MatchesBruteForceOnRandomDyadicPartitions) {
  std::mt19937_64 rng(7);
  for (int n = 2; n <= 4; ++n) {
    const auto halves = enumerateBinaryPartitions(n);
    std::uniform_int_distribution<std::size_t> pick(0, halves.size() - 1);
    // random equal-size 2^c partitions: products of random halves, kept when equal
    std::vector<Partition> pool;
    while (pool.size() < 40) {
      const int c = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
      std::vector<std::uint64_t> label(std::size_t{1} << n, 0);
      for (int i = 0; i < c; ++i) {
        const auto& h = halves[pick(rng)];
        for (std::size_t x = 0; x < label.size(); ++x) {
          label[x] = 2 * label[x] + h.blockOf(static_cast<Partition::Element>(x));
        }
      }
      std::map<std::uint64_t, Partition::Block> g;
      for (std::size_t x = 0; x < label.size(); ++x) g[label[x]].push_back(static_cast<Partition::Element>(x));
      Blocks blocks;
      for (auto& [k, v] : g) blocks.push_back(v);
      Partition p(n, blocks);
      if (p.hasEqualBlocks() && p.isDyadic()) pool.push_back(p);
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = 0; j < pool.size(); j += 3) {
        const auto got = finestCommonPartition(pool[i], pool[j]);
        ASSERT_EQ(got, bruteFinestCommon(pool[i], pool[j])) << "n=" << n << " i=" << i << " j=" << j;
        EXPECT_EQ(got, finestCommonPartition(pool[j], pool[i]));
        EXPECT_TRUE(pool[i].refines(got));
        EXPECT_TRUE(pool[j].refines(got));
      }
    }
    for (std::size_t i = 0; i + 2 < pool.size(); i += 2) {
      const auto& a = pool[i];
      const auto& b = pool[i + 1];
      const auto& c = pool[i + 2];
      EXPECT_EQ(finestCommonPartition(finestCommonPartition(a, b), c),
                finestCommonPartition(a, finestCommonPartition(b, c)));
      EXPECT_EQ(finestCommonPartition(a, Partition::whole(n)), Partition::whole(n));
      EXPECT_EQ(finestCommonPartition(a, a), a);
    }
  }
}

TEST(FinestCommonPartition, RejectsWidthMismatch) {
  EXPECT_THROW(finestCommonPartition(Partition::whole(2), Partition::whole(3)), DomainError);
}

TEST(ScaleTransform, BoundaryRaisesRangeError) {
  const PhaseSpaceSet s{DigitSubsetSet::make(3, 2, 3, 0b10), DigitSubsetSet::make(3, 3, 3, 1)};
  EXPECT_THROW(scaleTransformSet(s), RangeError);
  const PhaseSpaceSet t{DigitSubsetSet::make(3, 1, 3, 0), DigitSubsetSet::make(3, 2, 3, 1)};
  EXPECT_THROW(scaleTransformSet(t), RangeError);
}

TEST(ScaleTransform, ShiftsBitsAndPatterns) {
  const PhaseSpaceSet s{DigitSubsetSet::make(4, 3, 4, 0b10), DigitSubsetSet::make(4, 3, 4, 0b11)};
  const auto t = scaleTransformSet(s);
  EXPECT_EQ(t.q, DigitSubsetSet::make(4, 2, 3, 0b10));
  EXPECT_EQ(t.p, DigitSubsetSet::make(4, 4, 4, 0b1));
  EXPECT_EQ(t.levelSum(), s.levelSum());

  const PhaseSpaceSet u{DigitSubsetSet::make(4, 3, 3, 1), DigitSubsetSet::make(4, 2, 3, 0b01)};
  const auto v = scaleTransformSet(u);
  EXPECT_EQ(v.q, DigitSubsetSet::make(4, 2, 2, 1));
  EXPECT_EQ(v.p, DigitSubsetSet::make(4, 3, 4, 0b01));
}

TEST(ScaleTransform, PreservesLevelSumWhereverDefined) {
  const int n = 5;
  for (int l = 1; l <= n; ++l) {
    for (int lp = 1; lp <= n; ++lp) {
      for (std::uint64_t x = 0; x < 32; x += 5) {
        for (std::uint64_t y = 0; y < 32; y += 7) {
          const auto s = makePhaseSpaceSet(n, l, lp, x, y);
          if (l == 1 || lp == n) {
            EXPECT_THROW(scaleTransformSet(s), RangeError);
            continue;
          }
          const auto t = scaleTransformSet(s);
          EXPECT_EQ(t.levelSum(), s.levelSum());
          EXPECT_EQ(t.q.lo, l - 1);
          EXPECT_EQ(t.p.lo, lp + 1);
          EXPECT_EQ(t.p.hi, n);
        }
      }
    }
  }
}

TEST(EnumerateBinaryPartitions, Counts) {
  EXPECT_EQ(enumerateBinaryPartitions(1).size(), 1u);
  EXPECT_EQ(enumerateBinaryPartitions(2).size(), 3u);
  EXPECT_EQ(enumerateBinaryPartitions(3).size(), 35u);
  EXPECT_EQ(enumerateBinaryPartitions(4).size(), 6435u);
  EXPECT_THROW(enumerateBinaryPartitions(5), RefusalError);
}

TEST(EnumerateBinaryPartitions, AllDistinctEqualHalves) {
  const auto all = enumerateBinaryPartitions(3);
  std::set<std::set<Partition::Block>> seen;
  for (const auto& p : all) {
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0].size(), 4u);
    seen.insert(asSet(p));
  }
  EXPECT_EQ(seen.size(), all.size());
}

TEST(EqualPartitions, CountsMatchCombinatorialFormula) {
  for (int n = 1; n <= 4; ++n) {
    for (int c = 0; c <= n; ++c) {
      std::uint64_t count = 0;
      forEachEqualPartition(n, std::size_t{1} << c, [&](std::span<const std::uint32_t>) { ++count; });
      EXPECT_EQ(count, equalPartitionCount(1 << n, 1 << c)) << "n=" << n << " c=" << c;
    }
  }
  EXPECT_EQ(equalPartitionCount(8, 4), factorial(8) / (16 * factorial(4)));
}

TEST(ShiftAudit, OnlyLsbPartitionsAreInvariant) {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& lvl : auditShiftInvariance(n)) {
      EXPECT_TRUE(lvl.lsbInvariant) << "n=" << n << " c=" << lvl.c;
      EXPECT_EQ(lvl.invariant, 1u) << "n=" << n << " c=" << lvl.c;
      EXPECT_TRUE(lvl.counterexamples.empty());
    }
  }
  const auto n2 = auditShiftInvariance(2);
  EXPECT_EQ(n2[0].candidates, 3u);
}

TEST(ShiftAudit, MaskCheckAgreesWithPartitionShift) {
  const int n = 3;
  for (int c = 1; c <= n; ++c) {
    std::uint64_t invariant = 0;
    forEachEqualPartition(n, std::size_t{1} << c, [&](std::span<const std::uint32_t> masks) {
      const auto p = Partition::fromMasks(n, masks);
      if (isInvariantUnderShift(p)) {
        ++invariant;
        EXPECT_EQ(p, makeLsbPartition(n, n - c + 1));
      }
    });
    EXPECT_EQ(invariant, 1u);
  }
}

TEST(PartitionJson, RoundTrip) {
  const auto p = makeLsbPartition(3, 2);
  const auto j = toJson(p);
  EXPECT_EQ(j.at("n"), 3);
  EXPECT_EQ(j.at("sets")[1], (std::vector<int>{1, 5}));
  EXPECT_EQ(partitionFromJson(j), p);
}

}  // namespace
}  // namespace qrecon

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

#include "qrecon/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "qrecon/bits.hpp"
#include "qrecon/errors.hpp"

namespace qrecon {

namespace {

constexpr int kMaxWidth = 30;
constexpr int kMaxEnumWidth = 4;
constexpr std::size_t kMaxMeetBlocks = 24;

void requireWidth(int width) {
  if (width < 0 || width > kMaxWidth) {
    throw DomainError("partition width " + std::to_string(width) + " outside [0, 30]");
  }
}

std::vector<Partition::Block> groupByLabel(const std::vector<std::uint64_t>& label) {
  std::map<std::uint64_t, Partition::Block> groups;
  for (std::size_t x = 0; x < label.size(); ++x) {
    groups[label[x]].push_back(static_cast<Partition::Element>(x));
  }
  std::vector<Partition::Block> blocks;
  blocks.reserve(groups.size());
  for (auto& [key, members] : groups) blocks.push_back(std::move(members));
  return blocks;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::uint32_t rotateLeft1(std::uint32_t mask, int domain) {
  const std::uint32_t full = domain == 32 ? ~0u : ((1u << domain) - 1u);
  return ((mask << 1) | (mask >> (domain - 1))) & full;
}

bool masksShiftInvariant(std::span<const std::uint32_t> masks, int domain) {
  for (std::uint32_t m : masks) {
    const std::uint32_t r = rotateLeft1(m, domain);
    if (std::find(masks.begin(), masks.end(), r) == masks.end()) return false;
  }
  return true;
}

void enumerateBlocks(std::uint32_t remaining, std::size_t blockSize,
                     std::vector<std::uint32_t>& masks,
                     const std::function<void(std::span<const std::uint32_t>)>& visit) {
  if (remaining == 0) {
    visit(masks);
    return;
  }
  const int first = std::countr_zero(remaining);
  const std::uint32_t rest = remaining & (remaining - 1);
  std::vector<int> pool;
  for (std::uint32_t r = rest; r; r &= r - 1) pool.push_back(std::countr_zero(r));

  // choose blockSize-1 companions of `first` from pool, lexicographically
  const std::size_t need = blockSize - 1;
  std::vector<std::size_t> idx(need);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    std::uint32_t block = 1u << first;
    for (std::size_t i : idx) block |= 1u << pool[i];
    masks.push_back(block);
    enumerateBlocks(remaining & ~block, blockSize, masks, visit);
    masks.pop_back();

    if (need == 0) break;
    std::size_t i = need;
    while (i > 0 && idx[i - 1] == pool.size() - need + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < need; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

DigitSubsetSet DigitSubsetSet::make(int width, int lo, int hi, std::uint64_t pattern) {
  if (width < 1 || width > 62) throw DomainError("digit set width out of range");
  if (lo < 1 || lo > hi || hi > width) {
    throw DomainError("digit set needs 1 <= lo <= hi <= width, got lo=" + std::to_string(lo) +
                      " hi=" + std::to_string(hi) + " width=" + std::to_string(width));
  }
  const int len = hi - lo + 1;
  if (pattern >= (std::uint64_t{1} << len)) throw DomainError("digit set pattern too wide");
  return DigitSubsetSet{width, lo, hi, pattern};
}

bool DigitSubsetSet::contains(std::uint64_t x) const noexcept {
  const std::uint64_t mask = (std::uint64_t{1} << length()) - 1;
  return ((x >> (width - hi)) & mask) == pattern;
}

std::vector<std::uint32_t> DigitSubsetSet::members() const {
  if (width > kMaxWidth) throw RefusalError("digit set too wide to list");
  std::vector<std::uint32_t> out;
  const std::uint64_t n = std::uint64_t{1} << width;
  for (std::uint64_t x = 0; x < n; ++x) {
    if (contains(x)) out.push_back(static_cast<std::uint32_t>(x));
  }
  return out;
}

Partition::Partition(int width, std::vector<Block> blocks) : width_(width) {
  requireWidth(width);
  const std::size_t n = domainSize();
  owner_.assign(n, UINT32_MAX);
  for (auto& b : blocks) {
    if (b.empty()) throw DomainError("partition contains an empty set");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (Element x : blocks[i]) {
      if (x >= n) throw DomainError("partition element " + std::to_string(x) + " outside domain");
      if (owner_[x] != UINT32_MAX) {
        throw DomainError("partition sets overlap at " + std::to_string(x));
      }
      owner_[x] = static_cast<std::uint32_t>(i);
    }
  }
  if (std::find(owner_.begin(), owner_.end(), UINT32_MAX) != owner_.end()) {
    throw DomainError("partition does not cover the domain");
  }
  blocks_ = std::move(blocks);
}

Partition Partition::fromDigitSets(int width, std::span<const DigitSubsetSet> sets) {
  std::vector<Block> blocks;
  blocks.reserve(sets.size());
  for (const auto& s : sets) {
    if (s.width != width) throw DomainError("digit set width mismatch");
    blocks.push_back(s.members());
  }
  return Partition(width, std::move(blocks));
}

Partition Partition::singletons(int width) {
  requireWidth(width);
  std::vector<Block> blocks(std::size_t{1} << width);
  for (std::size_t x = 0; x < blocks.size(); ++x) blocks[x] = {static_cast<Element>(x)};
  return Partition(width, std::move(blocks));
}

Partition Partition::whole(int width) {
  requireWidth(width);
  Block all(std::size_t{1} << width);
  std::iota(all.begin(), all.end(), Element{0});
  return Partition(width, {std::move(all)});
}

Partition Partition::fromMasks(int width, std::span<const std::uint32_t> masks) {
  if (width < 0 || width > 5) throw DomainError("mask partitions need width <= 5");
  std::vector<Block> blocks;
  for (std::uint32_t m : masks) {
    Block b;
    for (std::uint32_t r = m; r; r &= r - 1) b.push_back(static_cast<Element>(std::countr_zero(r)));
    blocks.push_back(std::move(b));
  }
  return Partition(width, std::move(blocks));
}

std::size_t Partition::blockOf(Element x) const {
  if (x >= owner_.size()) throw DomainError("element outside partition domain");
  return owner_[x];
}

bool Partition::isDyadic() const noexcept { return isPowerOfTwo(blocks_.size()); }

bool Partition::hasEqualBlocks() const noexcept {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [&](const Block& b) { return b.size() == blocks_.front().size(); });
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.width_ != width_) return false;
  for (const auto& b : blocks_) {
    const auto target = coarser.blockOf(b.front());
    for (Element x : b) {
      if (coarser.blockOf(x) != target) return false;
    }
  }
  return true;
}

PhaseSpaceSet makePhaseSpaceSet(int n, int l, int lp, std::uint64_t x, std::uint64_t y) {
  if (l < 1 || l > n || lp < 1 || lp > n) throw DomainError("phase-space levels out of range");
  const auto lowBits = [n](std::uint64_t v, int lo) {
    return v & ((std::uint64_t{1} << (n - lo + 1)) - 1);
  };
  return PhaseSpaceSet{DigitSubsetSet::make(n, l, n, lowBits(x, l)),
                       DigitSubsetSet::make(n, lp, n, lowBits(y, lp))};
}

Partition makeLsbPartition(int n, int l) {
  if (n < 1 || n > kMaxWidth) throw DomainError("lsb partition width out of range");
  if (l < 1 || l > n) {
    throw DomainError("lsb partition needs 1 <= l <= n, got l=" + std::to_string(l));
  }
  const std::uint64_t keys = std::uint64_t{1} << (n - l + 1);
  std::vector<std::uint64_t> label(std::size_t{1} << n);
  for (std::size_t x = 0; x < label.size(); ++x) label[x] = x & (keys - 1);
  return Partition(n, groupByLabel(label));
}

Partition applyShift(const Partition& p, std::int64_t k) {
  const auto n = static_cast<std::int64_t>(p.domainSize());
  const auto shift = static_cast<std::uint64_t>(((k % n) + n) % n);
  std::vector<Partition::Block> blocks = p.blocks();
  for (auto& b : blocks) {
    for (auto& x : b) x = static_cast<Partition::Element>((x + shift) % static_cast<std::uint64_t>(n));
  }
  return Partition(p.width(), std::move(blocks));
}

bool isInvariantUnderShift(const Partition& p) { return applyShift(p, 1) == p; }

Partition finestCommonPartition(const Partition& a, const Partition& b) {
  if (a.width() != b.width()) throw DomainError("finestCommonPartition: width mismatch");
  const int width = a.width();
  const std::size_t n = a.domainSize();

  UnionFind uf(n);
  for (const auto* p : {&a, &b}) {
    for (const auto& blk : p->blocks()) {
      for (auto x : blk) uf.unite(blk.front(), x);
    }
  }
  std::vector<std::uint64_t> root(n);
  for (std::size_t x = 0; x < n; ++x) root[x] = uf.find(static_cast<std::uint32_t>(x));
  Partition common(width, groupByLabel(root));

  if (common.size() == 1) return common;
  if (common.hasEqualBlocks() && common.isDyadic()) return common;

  // Unequal common coarsening: a shared equal half is a union of its blocks.
  const std::size_t m = common.size();
  if (m > kMaxMeetBlocks) throw RefusalError("finestCommonPartition: too many blocks for search");
  std::vector<std::size_t> sizes(m);
  for (std::size_t i = 0; i < m; ++i) sizes[i] = common[i].size();

  std::vector<std::uint64_t> label(n, 0);
  bool anyHalf = false;
  // block 0 always on the "in" side so each half is counted once
  for (std::uint64_t sel = 1; sel < (std::uint64_t{1} << m); sel += 2) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (sel >> i & 1u) total += sizes[i];
    }
    if (2 * total != n) continue;
    anyHalf = true;
    for (std::size_t i = 0; i < m; ++i) {
      const std::uint64_t bit = sel >> i & 1u;
      for (auto x : common[i]) label[x] = (label[x] << 1) | bit;
    }
    // keep labels compact: relabel after each product
    std::map<std::uint64_t, std::uint64_t> compact;
    for (auto& v : label) v = compact.emplace(v, compact.size()).first->second;
  }
  if (!anyHalf) return Partition::whole(width);
  return Partition(width, groupByLabel(label));
}

PhaseSpaceSet scaleTransformSet(const PhaseSpaceSet& s) {
  const int n = s.p.width;
  if (s.q.width != n) throw DomainError("scaleTransformSet: q and p widths differ");
  if (s.q.lo == 1) throw RangeError("scaleTransformSet: q constraint already at bit 1");
  if (s.p.lo == n) throw RangeError("scaleTransformSet: p constraint already at bit n");
  DigitSubsetSet q = DigitSubsetSet::make(n, s.q.lo - 1, s.q.hi - 1, s.q.pattern);
  DigitSubsetSet p;
  if (s.p.hi < n) {
    p = DigitSubsetSet::make(n, s.p.lo + 1, s.p.hi + 1, s.p.pattern);
  } else {
    p = DigitSubsetSet::make(n, s.p.lo + 1, n, s.p.pattern >> 1);
  }
  return PhaseSpaceSet{q, p};
}

std::vector<Partition> enumerateBinaryPartitions(int n) {
  if (n < 1) throw DomainError("enumerateBinaryPartitions needs n >= 1");
  if (n > kMaxEnumWidth) throw RefusalError("enumerateBinaryPartitions capped at n = 4");
  std::vector<Partition> out;
  forEachEqualPartition(n, 2, [&](std::span<const std::uint32_t> masks) {
    out.push_back(Partition::fromMasks(n, masks));
  });
  return out;
}

void forEachEqualPartition(int n, std::size_t blockCount,
                           const std::function<void(std::span<const std::uint32_t>)>& visit) {
  if (n < 0) throw DomainError("forEachEqualPartition needs n >= 0");
  if (n > kMaxEnumWidth) throw RefusalError("equal-partition enumeration capped at n = 4");
  const std::size_t domain = std::size_t{1} << n;
  if (blockCount == 0 || domain % blockCount != 0) {
    throw DomainError("block count must divide the domain size");
  }
  std::vector<std::uint32_t> masks;
  masks.reserve(blockCount);
  const auto full = static_cast<std::uint32_t>((std::uint64_t{1} << domain) - 1);
  enumerateBlocks(full, domain / blockCount, masks, visit);
}

std::vector<ShiftAuditLevel> auditShiftInvariance(int n) {
  if (n < 1) throw DomainError("auditShiftInvariance needs n >= 1");
  if (n > kMaxEnumWidth) throw RefusalError("shift-invariance audit capped at n = 4");
  const int domain = 1 << n;
  std::vector<ShiftAuditLevel> levels;
  for (int c = 1; c <= n; ++c) {
    ShiftAuditLevel lvl;
    lvl.c = c;
    const Partition lsb = makeLsbPartition(n, n - c + 1);
    forEachEqualPartition(n, std::size_t{1} << c, [&](std::span<const std::uint32_t> masks) {
      ++lvl.candidates;
      if (!masksShiftInvariant(masks, domain)) return;
      ++lvl.invariant;
      Partition p = Partition::fromMasks(n, masks);
      if (p == lsb) {
        lvl.lsbInvariant = true;
      } else if (lvl.counterexamples.size() < 16) {
        lvl.counterexamples.push_back(std::move(p));
      }
    });
    levels.push_back(std::move(lvl));
  }
  return levels;
}

nlohmann::json toJson(const Partition& p) {
  return nlohmann::json{{"n", p.width()}, {"sets", p.blocks()}};
}

Partition partitionFromJson(const nlohmann::json& j) {
  return Partition(j.at("n").get<int>(), j.at("sets").get<std::vector<Partition::Block>>());
}

nlohmann::json toJson(const DigitSubsetSet& s) {
  return nlohmann::json{{"n", s.width}, {"lo", s.lo}, {"hi", s.hi}, {"pattern", s.pattern},
                        {"bitOrder", "1 = most significant"}};
}

nlohmann::json toJson(const PhaseSpaceSet& s) {
  return nlohmann::json{{"q", toJson(s.q)}, {"p", toJson(s.p)}};
}

}  // namespace qrecon

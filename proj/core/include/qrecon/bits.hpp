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

#include <bit>
#include <cstdint>

namespace qrecon {

// Bit index convention used throughout the library: for a width-n value,
// bit 1 is the MOST significant bit and bit n the least significant.

inline constexpr bool isPowerOfTwo(std::uint64_t v) noexcept {
  return std::has_single_bit(v);
}

/// log2 of a power of two.
inline constexpr int log2Exact(std::uint64_t v) noexcept {
  return std::countr_zero(v);
}

/// Reverses the low `width` bits of x.
inline constexpr std::uint64_t bitReverse(std::uint64_t x, int width) noexcept {
  std::uint64_t r = 0;
  for (int i = 0; i < width; ++i) {
    r = (r << 1) | ((x >> i) & 1u);
  }
  return r;
}

/// Value of bit `index` (1 = MSB) of a width-n value.
inline constexpr unsigned bitAt(std::uint64_t x, int width, int index) noexcept {
  return static_cast<unsigned>((x >> (width - index)) & 1u);
}

}  // namespace qrecon

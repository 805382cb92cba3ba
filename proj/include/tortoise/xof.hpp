// Copyright 2026 The Tortoise Authors
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

// SHAKE128 (FIPS 202) over a direct Keccak-f[1600] core.

#pragma once

#include <array>
#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "tortoise/bytes.hpp"

namespace tortoise {

/// How sponge lanes are held in memory. `little` is the natural layout on
/// the hosts we build for; `swapped` keeps every lane byte-reversed between
/// permutations, reproducing what a big-endian host that loads lanes with
/// a plain memory copy would do. Output must not depend on the choice.
enum class LaneOrder { little, swapped };

namespace detail {

inline constexpr std::array<std::uint64_t, 24> kKeccakRoundConstants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// rho offsets and pi destinations, walked along the standard lane cycle.
inline constexpr std::array<int, 24> kKeccakRho = {1,  3,  6,  10, 15, 21, 28, 36,
                                                   45, 55, 2,  14, 27, 41, 56, 8,
                                                   25, 43, 62, 18, 39, 61, 20, 44};
inline constexpr std::array<int, 24> kKeccakPi = {10, 7,  11, 17, 18, 3,  5,  16,
                                                  8,  21, 24, 4,  15, 23, 19, 13,
                                                  12, 2,  20, 14, 22, 9,  6,  1};

inline void keccak_f1600(std::array<std::uint64_t, 25>& a) {
  for (std::uint64_t rc : kKeccakRoundConstants) {
    std::array<std::uint64_t, 5> c{};
    for (int x = 0; x < 5; ++x) c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
    for (int x = 0; x < 5; ++x) {
      const std::uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
      for (int y = 0; y < 25; y += 5) a[y + x] ^= d;
    }
    std::uint64_t carry = a[1];
    for (int i = 0; i < 24; ++i) {
      const int j = kKeccakPi[i];
      const std::uint64_t next = a[j];
      a[j] = std::rotl(carry, kKeccakRho[i]);
      carry = next;
    }
    for (int y = 0; y < 25; y += 5) {
      std::array<std::uint64_t, 5> row{};
      for (int x = 0; x < 5; ++x) row[x] = a[y + x];
      for (int x = 0; x < 5; ++x) a[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
    }
    a[0] ^= rc;
  }
}

constexpr std::uint64_t byteswap64(std::uint64_t v) {
  v = ((v & 0x00ff00ff00ff00ffULL) << 8) | ((v >> 8) & 0x00ff00ff00ff00ffULL);
  v = ((v & 0x0000ffff0000ffffULL) << 16) | ((v >> 16) & 0x0000ffff0000ffffULL);
  return (v << 32) | (v >> 32);
}

}  // namespace detail

/// Single-shot SHAKE128 sponge.
template <LaneOrder Order = LaneOrder::little>
class Shake128Sponge {
 public:
  static constexpr std::size_t kRate = 168;

  static Bytes digest(ByteView input, std::size_t out_len) {
    if (out_len == 0) throw std::invalid_argument("shake128: output length must be >= 1");
    Shake128Sponge sponge;
    std::size_t pos = 0;
    for (std::uint8_t b : input) {
      sponge.xor_byte(pos++, b);
      if (pos == kRate) {
        sponge.permute();
        pos = 0;
      }
    }
    sponge.xor_byte(pos, 0x1f);
    sponge.xor_byte(kRate - 1, 0x80);
    sponge.permute();

    Bytes out(out_len);
    pos = 0;
    for (std::size_t i = 0; i < out_len; ++i) {
      if (pos == kRate) {
        sponge.permute();
        pos = 0;
      }
      out[i] = sponge.byte_at(pos++);
    }
    return out;
  }

 private:
  static constexpr unsigned shift_for(std::size_t pos) {
    const auto in_lane = static_cast<unsigned>(pos % 8);
    return 8 * (Order == LaneOrder::little ? in_lane : 7 - in_lane);
  }

  void xor_byte(std::size_t pos, std::uint8_t b) {
    lanes_[pos / 8] ^= std::uint64_t{b} << shift_for(pos);
  }

  std::uint8_t byte_at(std::size_t pos) const {
    return static_cast<std::uint8_t>(lanes_[pos / 8] >> shift_for(pos));
  }

  void permute() {
    if constexpr (Order == LaneOrder::swapped) {
      for (auto& lane : lanes_) lane = detail::byteswap64(lane);
      detail::keccak_f1600(lanes_);
      for (auto& lane : lanes_) lane = detail::byteswap64(lane);
    } else {
      detail::keccak_f1600(lanes_);
    }
  }

  std::array<std::uint64_t, 25> lanes_{};
};

/// The hash h of the tweakable construction. Used as a template argument
/// so alternative XOF back ends can be substituted in tests.
template <LaneOrder Order = LaneOrder::little>
struct BasicShake128 {
  static Bytes squeeze(ByteView input, std::size_t out_len) {
    return Shake128Sponge<Order>::digest(input, out_len);
  }
};

using Shake128 = BasicShake128<LaneOrder::little>;

template <class X>
concept Xof = requires(ByteView input, std::size_t n) {
  { X::squeeze(input, n) } -> std::same_as<Bytes>;
};

inline Bytes shake128(ByteView input, std::size_t out_len) {
  return Shake128::squeeze(input, out_len);
}

}  // namespace tortoise

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

// Block-cipher contract plus the two instantiations the framework ships
// with: AES-128 (FIPS-197) and a 16-bit toy SPN small enough to enumerate.

#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include "tortoise/bytes.hpp"

namespace tortoise {

/// A keyed block permutation. Constructing a cipher object from a key
/// prepares its key schedule; the object is immutable afterwards, so one
/// instance may be shared across threads.
template <class C>
concept BlockCipher = requires(const C& cipher, const typename C::Block& block,
                               const typename C::Key& key) {
  { C::kName } -> std::convertible_to<std::string_view>;
  { C::kBlockLen } -> std::convertible_to<std::size_t>;
  { C::kKeyLen } -> std::convertible_to<std::size_t>;
  requires std::same_as<typename C::Block, std::array<std::uint8_t, C::kBlockLen>>;
  requires std::same_as<typename C::Key, std::array<std::uint8_t, C::kKeyLen>>;
  C{key};
  { cipher.encrypt_block(block) } -> std::same_as<typename C::Block>;
  { cipher.decrypt_block(block) } -> std::same_as<typename C::Block>;
};

/// Copies a dynamically sized view into a fixed array, rejecting any
/// length mismatch.
template <std::size_t N>
std::array<std::uint8_t, N> to_array(ByteView data, std::string_view what) {
  if (data.size() != N) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(N) +
                                " bytes, got " + std::to_string(data.size()));
  }
  std::array<std::uint8_t, N> out{};
  std::copy(data.begin(), data.end(), out.begin());
  return out;
}

namespace detail {

inline constexpr std::array<std::uint8_t, 256> kAesSbox = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16,
};

inline constexpr std::array<std::uint8_t, 256> kAesInvSbox = [] {
  std::array<std::uint8_t, 256> inv{};
  for (std::size_t i = 0; i < 256; ++i) inv[kAesSbox[i]] = static_cast<std::uint8_t>(i);
  return inv;
}();

constexpr std::uint8_t xtime(std::uint8_t x) {
  return static_cast<std::uint8_t>((x << 1) ^ ((x & 0x80) ? 0x1b : 0x00));
}

// GF(2^8) multiply modulo x^8 + x^4 + x^3 + x + 1.
constexpr std::uint8_t gmul(std::uint8_t a, std::uint8_t b) {
  std::uint8_t product = 0;
  while (b != 0) {
    if (b & 1) product ^= a;
    a = xtime(a);
    b >>= 1;
  }
  return product;
}

}  // namespace detail

/// AES-128 with a precomputed key schedule. The state is kept in the
/// FIPS-197 column-major byte order, so input byte i is state[i].
class Aes128 {
 public:
  static constexpr std::string_view kName = "aes128";
  static constexpr std::size_t kBlockLen = 16;
  static constexpr std::size_t kKeyLen = 16;
  static constexpr std::size_t kRounds = 10;

  using Block = std::array<std::uint8_t, kBlockLen>;
  using Key = std::array<std::uint8_t, kKeyLen>;

  explicit Aes128(const Key& key) { expand_key(key); }

  Block encrypt_block(const Block& in) const {
    Block s = in;
    add_round_key(s, 0);
    for (std::size_t round = 1; round < kRounds; ++round) {
      sub_bytes(s, detail::kAesSbox);
      shift_rows(s);
      mix_columns(s);
      add_round_key(s, round);
    }
    sub_bytes(s, detail::kAesSbox);
    shift_rows(s);
    add_round_key(s, kRounds);
    return s;
  }

  Block decrypt_block(const Block& in) const {
    Block s = in;
    add_round_key(s, kRounds);
    for (std::size_t round = kRounds - 1; round > 0; --round) {
      inv_shift_rows(s);
      sub_bytes(s, detail::kAesInvSbox);
      add_round_key(s, round);
      inv_mix_columns(s);
    }
    inv_shift_rows(s);
    sub_bytes(s, detail::kAesInvSbox);
    add_round_key(s, 0);
    return s;
  }

 private:
  void expand_key(const Key& key) {
    std::copy(key.begin(), key.end(), round_keys_.begin());
    std::uint8_t rcon = 0x01;
    for (std::size_t i = kKeyLen; i < round_keys_.size(); i += 4) {
      std::array<std::uint8_t, 4> word = {round_keys_[i - 4], round_keys_[i - 3],
                                          round_keys_[i - 2], round_keys_[i - 1]};
      if (i % kKeyLen == 0) {
        // RotWord, SubWord, Rcon
        word = {static_cast<std::uint8_t>(detail::kAesSbox[word[1]] ^ rcon),
                detail::kAesSbox[word[2]], detail::kAesSbox[word[3]], detail::kAesSbox[word[0]]};
        rcon = detail::xtime(rcon);
      }
      for (std::size_t k = 0; k < 4; ++k) {
        round_keys_[i + k] = static_cast<std::uint8_t>(round_keys_[i + k - kKeyLen] ^ word[k]);
      }
    }
  }

  void add_round_key(Block& s, std::size_t round) const {
    for (std::size_t i = 0; i < kBlockLen; ++i) s[i] ^= round_keys_[round * kBlockLen + i];
  }

  static void sub_bytes(Block& s, const std::array<std::uint8_t, 256>& box) {
    for (auto& b : s) b = box[b];
  }

  // Row r of the state lives at indices r, r+4, r+8, r+12.
  static void shift_rows(Block& s) {
    Block t = s;
    for (std::size_t r = 1; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) s[r + 4 * c] = t[r + 4 * ((c + r) % 4)];
    }
  }

  static void inv_shift_rows(Block& s) {
    Block t = s;
    for (std::size_t r = 1; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) s[r + 4 * ((c + r) % 4)] = t[r + 4 * c];
    }
  }

  static void mix_columns(Block& s) {
    for (std::size_t c = 0; c < 4; ++c) {
      std::uint8_t* col = &s[4 * c];
      const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
      const std::uint8_t all = a0 ^ a1 ^ a2 ^ a3;
      col[0] = static_cast<std::uint8_t>(a0 ^ all ^ detail::xtime(a0 ^ a1));
      col[1] = static_cast<std::uint8_t>(a1 ^ all ^ detail::xtime(a1 ^ a2));
      col[2] = static_cast<std::uint8_t>(a2 ^ all ^ detail::xtime(a2 ^ a3));
      col[3] = static_cast<std::uint8_t>(a3 ^ all ^ detail::xtime(a3 ^ a0));
    }
  }

  static void inv_mix_columns(Block& s) {
    using detail::gmul;
    for (std::size_t c = 0; c < 4; ++c) {
      std::uint8_t* col = &s[4 * c];
      const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
      col[0] = gmul(a0, 14) ^ gmul(a1, 11) ^ gmul(a2, 13) ^ gmul(a3, 9);
      col[1] = gmul(a0, 9) ^ gmul(a1, 14) ^ gmul(a2, 11) ^ gmul(a3, 13);
      col[2] = gmul(a0, 13) ^ gmul(a1, 9) ^ gmul(a2, 14) ^ gmul(a3, 11);
      col[3] = gmul(a0, 11) ^ gmul(a1, 13) ^ gmul(a2, 9) ^ gmul(a3, 14);
    }
  }

  std::array<std::uint8_t, kBlockLen*(kRounds + 1)> round_keys_{};
};

/// Deliberately weak 16-bit substitution-permutation network. Four rounds
/// of round-key XOR, a 4-bit S-box on each nibble and a one-nibble left
/// rotation, followed by a whitening key. Small enough that every
/// permutation it defines can be enumerated.
class ToyCipher {
 public:
  static constexpr std::string_view kName = "toy16";
  static constexpr std::size_t kBlockLen = 2;
  static constexpr std::size_t kKeyLen = 2;
  static constexpr std::size_t kRounds = 4;

  using Block = std::array<std::uint8_t, kBlockLen>;
  using Key = std::array<std::uint8_t, kKeyLen>;

  // PRESENT S-box.
  static constexpr std::array<std::uint8_t, 16> kSbox = {0xc, 0x5, 0x6, 0xb, 0x9, 0x0, 0xa, 0xd,
                                                         0x3, 0xe, 0xf, 0x8, 0x4, 0x7, 0x1, 0x2};
  static constexpr std::array<std::uint16_t, kRounds + 1> kRoundConstants = {
      0x3a5c, 0x71e2, 0xc4b9, 0x1f86, 0xe06d};

  explicit ToyCipher(const Key& key) {
    const auto k = static_cast<std::uint16_t>((key[0] << 8) | key[1]);
    for (std::size_t r = 0; r <= kRounds; ++r) {
      round_keys_[r] = static_cast<std::uint16_t>(rotl(k, static_cast<int>(5 * r)) ^
                                                  kRoundConstants[r]);
    }
  }

  Block encrypt_block(const Block& in) const {
    auto x = static_cast<std::uint16_t>((in[0] << 8) | in[1]);
    for (std::size_t r = 0; r < kRounds; ++r) {
      x ^= round_keys_[r];
      x = substitute(x, kSbox);
      x = rotl(x, 4);
    }
    x ^= round_keys_[kRounds];
    return {static_cast<std::uint8_t>(x >> 8), static_cast<std::uint8_t>(x)};
  }

  Block decrypt_block(const Block& in) const {
    auto x = static_cast<std::uint16_t>((in[0] << 8) | in[1]);
    x ^= round_keys_[kRounds];
    for (std::size_t r = kRounds; r-- > 0;) {
      x = rotl(x, 12);
      x = substitute(x, kInvSbox);
      x ^= round_keys_[r];
    }
    return {static_cast<std::uint8_t>(x >> 8), static_cast<std::uint8_t>(x)};
  }

 private:
  static constexpr std::array<std::uint8_t, 16> kInvSbox = [] {
    std::array<std::uint8_t, 16> inv{};
    for (std::uint8_t i = 0; i < 16; ++i) inv[kSbox[i]] = i;
    return inv;
  }();

  static constexpr std::uint16_t rotl(std::uint16_t x, int n) {
    n &= 15;
    if (n == 0) return x;
    return static_cast<std::uint16_t>((x << n) | (x >> (16 - n)));
  }

  static constexpr std::uint16_t substitute(std::uint16_t x,
                                            const std::array<std::uint8_t, 16>& box) {
    std::uint16_t out = 0;
    for (int shift = 0; shift < 16; shift += 4) {
      out |= static_cast<std::uint16_t>(box[(x >> shift) & 0xf] << shift);
    }
    return out;
  }

  std::array<std::uint16_t, kRounds + 1> round_keys_{};
};

static_assert(BlockCipher<Aes128>);
static_assert(BlockCipher<ToyCipher>);

inline Aes128::Block aes128_encrypt_block(ByteView key, ByteView block) {
  return Aes128(to_array<16>(key, "aes128 key")).encrypt_block(to_array<16>(block, "aes128 block"));
}

inline Aes128::Block aes128_decrypt_block(ByteView key, ByteView block) {
  return Aes128(to_array<16>(key, "aes128 key")).decrypt_block(to_array<16>(block, "aes128 block"));
}

inline ToyCipher::Block toy_encrypt_block(ByteView key, ByteView block) {
  return ToyCipher(to_array<2>(key, "toy16 key")).encrypt_block(to_array<2>(block, "toy16 block"));
}

inline ToyCipher::Block toy_decrypt_block(ByteView key, ByteView block) {
  return ToyCipher(to_array<2>(key, "toy16 key")).decrypt_block(to_array<2>(block, "toy16 block"));
}

/// Runs `fn(std::type_identity<C>{})` for the cipher registered under
/// `name`. Throws std::invalid_argument for unknown names.
template <class Fn>
decltype(auto) with_cipher(std::string_view name, Fn&& fn) {
  if (name == Aes128::kName) return fn(std::type_identity<Aes128>{});
  if (name == ToyCipher::kName) return fn(std::type_identity<ToyCipher>{});
  throw std::invalid_argument("unknown cipher: " + std::string(name));
}

inline constexpr std::array<std::string_view, 2> kCipherNames = {Aes128::kName, ToyCipher::kName};

}  // namespace tortoise

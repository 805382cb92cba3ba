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

// Tweakable block cipher built from any BlockCipher by hashing the tweak
// under the master key: (subkey, mask) = SHAKE128(K || T), and
//   E~(K, T, P) = E(subkey, P) xor mask
//   D~(K, T, C) = D(subkey, C xor mask)
// plus the byte layouts of every tweak the AEAD modes feed it.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "tortoise/block_cipher.hpp"
#include "tortoise/bytes.hpp"
#include "tortoise/xof.hpp"

namespace tortoise {

/// Four-bit domain prefixes, stored in the high nibble of tweak byte 0.
enum class TweakPrefix : std::uint8_t {
  message = 0b0000,
  tag = 0b0001,
  associated_data = 0b0010,
};

/// Field widths of the tweak encodings for a given block length n.
///
/// For n = 16 every tweak is exactly one block:
///   AD       20 | i (15 bytes)
///   message  p0 | nonce (8) | j (7)
///   MR tag   10 | nonce (15)
///   MR key   tag xor j
/// Blocks too narrow to hold a nonce next to a counter (the 2-byte toy
/// cipher) widen only the message tweak, keeping one byte per field.
struct TweakLayout {
  std::size_t block_len;
  std::size_t nr_nonce_len;
  std::size_t nr_counter_len;

  static constexpr TweakLayout for_block(std::size_t n) {
    const std::size_t nonce = n / 2;
    const std::size_t counter = n - 1 > nonce ? n - 1 - nonce : 1;
    return {n, nonce, counter};
  }

  constexpr std::size_t ad_index_len() const { return block_len - 1; }
  constexpr std::size_t mr_nonce_len() const { return block_len - 1; }
  constexpr std::size_t nr_tweak_len() const { return 1 + nr_nonce_len + nr_counter_len; }
};

/// Raw tweak bytes. Length is fixed per encoding and cipher; 32 bytes
/// covers every layout we generate.
class Tweak {
 public:
  static constexpr std::size_t kMaxLen = 32;

  Tweak() = default;

  explicit Tweak(ByteView raw) : size_(raw.size()) {
    if (raw.size() > kMaxLen) throw std::invalid_argument("tweak too long");
    std::copy(raw.begin(), raw.end(), bytes_.begin());
  }

  static Tweak zeros(std::size_t len) {
    if (len > kMaxLen) throw std::invalid_argument("tweak too long");
    Tweak t;
    t.size_ = len;
    return t;
  }

  ByteView raw() const { return {bytes_.data(), size_}; }
  std::span<std::uint8_t> mutable_raw() { return {bytes_.data(), size_}; }
  std::size_t size() const { return size_; }

  friend bool operator==(const Tweak& a, const Tweak& b) {
    return std::ranges::equal(a.raw(), b.raw());
  }

 private:
  std::array<std::uint8_t, kMaxLen> bytes_{};
  std::size_t size_ = 0;
};

/// 0010 | 0000 | i, i big-endian over the remaining n - 1 bytes.
inline Tweak encode_ad_tweak(const TweakLayout& layout, uint128 index) {
  if (!fits_in_bytes(index, layout.ad_index_len())) {
    throw std::invalid_argument("associated-data block index out of range");
  }
  Tweak t = Tweak::zeros(layout.block_len);
  auto raw = t.mutable_raw();
  raw[0] = static_cast<std::uint8_t>(TweakPrefix::associated_data) << 4;
  store_be(index, raw.subspan(1));
  return t;
}

/// prefix | 0000 | nonce | j. Used with prefix 0000 per message block and
/// 0001 for the checksum tweak, where j is the block count.
inline Tweak encode_nr_msg_tweak(const TweakLayout& layout, TweakPrefix prefix, ByteView nonce,
                                 uint128 counter) {
  if (prefix != TweakPrefix::message && prefix != TweakPrefix::tag) {
    throw std::invalid_argument("message tweak prefix must be 0000 or 0001");
  }
  if (nonce.size() != layout.nr_nonce_len) {
    throw std::invalid_argument("nonce-respecting nonce must be " +
                                std::to_string(layout.nr_nonce_len) + " bytes");
  }
  if (!fits_in_bytes(counter, layout.nr_counter_len)) {
    throw std::invalid_argument("message block counter out of range");
  }
  Tweak t = Tweak::zeros(layout.nr_tweak_len());
  auto raw = t.mutable_raw();
  raw[0] = static_cast<std::uint8_t>(static_cast<std::uint8_t>(prefix) << 4);
  std::copy(nonce.begin(), nonce.end(), raw.begin() + 1);
  store_be(counter, raw.subspan(1 + layout.nr_nonce_len));
  return t;
}

/// 0001 | 0000 | nonce, nonce filling the remaining n - 1 bytes.
inline Tweak encode_mr_tag_tweak(const TweakLayout& layout, ByteView nonce) {
  if (nonce.size() != layout.mr_nonce_len()) {
    throw std::invalid_argument("misuse-resistant nonce must be " +
                                std::to_string(layout.mr_nonce_len()) + " bytes");
  }
  Tweak t = Tweak::zeros(layout.block_len);
  auto raw = t.mutable_raw();
  raw[0] = static_cast<std::uint8_t>(TweakPrefix::tag) << 4;
  std::copy(nonce.begin(), nonce.end(), raw.begin() + 1);
  return t;
}

/// tag xor j, with j big-endian across the full block.
inline Tweak encode_mr_stream_tweak(ByteView tag, std::uint64_t counter) {
  if (!fits_in_bytes(counter, tag.size())) {
    throw std::invalid_argument("keystream counter out of range");
  }
  Tweak t = Tweak::zeros(tag.size());
  auto raw = t.mutable_raw();
  store_be(counter, raw);
  xor_into(raw, tag);
  return t;
}

template <BlockCipher C>
struct SubkeyAndMask {
  typename C::Key subkey;
  typename C::Block mask;
};

/// E~/D~ over cipher C with hash X. Holds only the master key; every call
/// derives a fresh subkey from the tweak.
template <BlockCipher C, Xof X = Shake128>
class TweakableCipher {
 public:
  using Cipher = C;
  using Block = typename C::Block;
  using Key = typename C::Key;

  static constexpr std::size_t kBlockLen = C::kBlockLen;
  static constexpr std::size_t kKeyLen = C::kKeyLen;
  static constexpr TweakLayout kLayout = TweakLayout::for_block(kBlockLen);

  explicit TweakableCipher(const Key& master_key) : master_key_(master_key) {}
  explicit TweakableCipher(ByteView master_key)
      : master_key_(to_array<kKeyLen>(master_key, "master key")) {}

  const Key& master_key() const { return master_key_; }

  /// One squeeze of K || T: the first kKeyLen bytes are the subkey, the
  /// next kBlockLen bytes the output mask.
  SubkeyAndMask<C> derive_subkey_and_mask(const Tweak& tweak) const {
    Bytes input;
    input.reserve(kKeyLen + tweak.size());
    input.insert(input.end(), master_key_.begin(), master_key_.end());
    input.insert(input.end(), tweak.raw().begin(), tweak.raw().end());
    Bytes stream = X::squeeze(input, kKeyLen + kBlockLen);
    SubkeyAndMask<C> out;
    std::copy_n(stream.begin(), kKeyLen, out.subkey.begin());
    std::copy_n(stream.begin() + kKeyLen, kBlockLen, out.mask.begin());
    secure_wipe(stream);
    return out;
  }

  Block encrypt(const Tweak& tweak, const Block& block) const {
    auto [subkey, mask] = derive_subkey_and_mask(tweak);
    Block out = C(subkey).encrypt_block(block);
    xor_into(out, mask);
    secure_wipe(subkey);
    return out;
  }

  Block decrypt(const Tweak& tweak, const Block& block) const {
    auto [subkey, mask] = derive_subkey_and_mask(tweak);
    Block in = block;
    xor_into(in, mask);
    Block out = C(subkey).decrypt_block(in);
    secure_wipe(subkey);
    return out;
  }

  Block encrypt(const Tweak& tweak, ByteView block) const {
    return encrypt(tweak, to_array<kBlockLen>(block, "block"));
  }

  Block decrypt(const Tweak& tweak, ByteView block) const {
    return decrypt(tweak, to_array<kBlockLen>(block, "block"));
  }

 private:
  Key master_key_;
};

}  // namespace tortoise

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

// Authenticated encryption with associated data over a TweakableCipher.
//
// Nonce-respecting (NR): counter-in-tweak encryption of each padded block
// plus an encrypted XOR checksum; the tag is that encryption XOR the
// associated-data hash. Nonce-misuse-resistant (MR): SIV-style, the tag is
// computed over the whole message first and then keys a counter stream.
//
// Associated data and plaintext are both PKCS#7 padded, so an empty input
// still contributes one block. Block indices start at 0 and every counter
// is big-endian.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tortoise/block_cipher.hpp"
#include "tortoise/bytes.hpp"
#include "tortoise/padding.hpp"
#include "tortoise/tweakable.hpp"
#include "tortoise/xof.hpp"

namespace tortoise {

enum class AeadMode : std::uint8_t { nonce_respecting = 0x00, misuse_resistant = 0x01 };

inline std::string_view mode_name(AeadMode mode) {
  return mode == AeadMode::nonce_respecting ? "nr" : "mr";
}

inline std::optional<AeadMode> parse_mode(std::string_view name) {
  if (name == "nr") return AeadMode::nonce_respecting;
  if (name == "mr") return AeadMode::misuse_resistant;
  return std::nullopt;
}

struct SealedMessage {
  AeadMode mode = AeadMode::nonce_respecting;
  Bytes nonce;
  Bytes ciphertext;
  Bytes tag;

  friend bool operator==(const SealedMessage&, const SealedMessage&) = default;
};

template <BlockCipher C, Xof X = Shake128>
class Aead {
 public:
  using Tweakable = TweakableCipher<C, X>;
  using Block = typename C::Block;
  using Key = typename C::Key;

  static constexpr std::size_t kBlockLen = C::kBlockLen;
  static constexpr std::size_t kKeyLen = C::kKeyLen;
  static constexpr std::size_t kTagLen = C::kBlockLen;
  static constexpr TweakLayout kLayout = Tweakable::kLayout;

  explicit Aead(const Key& key) : tbc_(key) {}
  explicit Aead(ByteView key) : tbc_(key) {}

  static constexpr std::size_t nonce_len(AeadMode mode) {
    return mode == AeadMode::nonce_respecting ? kLayout.nr_nonce_len : kLayout.mr_nonce_len();
  }

  const Tweakable& tweakable() const { return tbc_; }

  /// XOR over i of E~(K, 0010|i, A_i) for the padded associated data.
  Block compute_auth(ByteView ad) const {
    const Bytes padded = pkcs7_pad(ad, kBlockLen);
    Block auth{};
    for (std::size_t i = 0; i * kBlockLen < padded.size(); ++i) {
      xor_into(auth, tbc_.encrypt(encode_ad_tweak(kLayout, i), block_at(padded, i)));
    }
    return auth;
  }

  SealedMessage seal(AeadMode mode, ByteView nonce, ByteView ad, ByteView plaintext) const {
    return mode == AeadMode::nonce_respecting ? seal_nr(nonce, ad, plaintext)
                                              : seal_mr(nonce, ad, plaintext);
  }

  std::optional<Bytes> open(AeadMode mode, ByteView nonce, ByteView ad, ByteView ciphertext,
                            ByteView tag) const {
    return mode == AeadMode::nonce_respecting ? open_nr(nonce, ad, ciphertext, tag)
                                              : open_mr(nonce, ad, ciphertext, tag);
  }

  std::optional<Bytes> open(const SealedMessage& msg, ByteView ad) const {
    return open(msg.mode, msg.nonce, ad, msg.ciphertext, msg.tag);
  }

  SealedMessage seal_nr(ByteView nonce, ByteView ad, ByteView plaintext) const {
    check_nonce(AeadMode::nonce_respecting, nonce);
    Bytes padded = pkcs7_pad(plaintext, kBlockLen);
    const std::size_t blocks = padded.size() / kBlockLen;
    check_block_count(blocks);

    SealedMessage out{AeadMode::nonce_respecting, Bytes(nonce.begin(), nonce.end()),
                      Bytes(padded.size()), {}};
    Block checksum{};
    for (std::size_t j = 0; j < blocks; ++j) {
      const Block p = block_at(padded, j);
      xor_into(checksum, p);
      const Block c = tbc_.encrypt(encode_nr_msg_tweak(kLayout, TweakPrefix::message, nonce, j), p);
      std::copy(c.begin(), c.end(), out.ciphertext.begin() + j * kBlockLen);
    }
    Block tag = tbc_.encrypt(encode_nr_msg_tweak(kLayout, TweakPrefix::tag, nonce, blocks), checksum);
    xor_into(tag, compute_auth(ad));
    out.tag.assign(tag.begin(), tag.end());
    secure_wipe(padded);
    return out;
  }

  std::optional<Bytes> open_nr(ByteView nonce, ByteView ad, ByteView ciphertext,
                               ByteView tag) const {
    check_open_args(AeadMode::nonce_respecting, nonce, ciphertext, tag);
    const std::size_t blocks = ciphertext.size() / kBlockLen;

    Bytes padded(ciphertext.size());
    Block checksum{};
    for (std::size_t j = 0; j < blocks; ++j) {
      const Block p = tbc_.decrypt(encode_nr_msg_tweak(kLayout, TweakPrefix::message, nonce, j),
                                   block_at(ciphertext, j));
      xor_into(checksum, p);
      std::copy(p.begin(), p.end(), padded.begin() + j * kBlockLen);
    }
    Block expected =
        tbc_.encrypt(encode_nr_msg_tweak(kLayout, TweakPrefix::tag, nonce, blocks), checksum);
    xor_into(expected, compute_auth(ad));
    return release(std::move(padded), expected, tag);
  }

  SealedMessage seal_mr(ByteView nonce, ByteView ad, ByteView plaintext) const {
    check_nonce(AeadMode::misuse_resistant, nonce);
    Bytes padded = pkcs7_pad(plaintext, kBlockLen);
    const std::size_t blocks = padded.size() / kBlockLen;
    check_block_count(blocks);

    const Block tag = mr_tag(nonce, ad, padded);
    SealedMessage out{AeadMode::misuse_resistant, Bytes(nonce.begin(), nonce.end()),
                      std::move(padded), Bytes(tag.begin(), tag.end())};
    apply_keystream(nonce, tag, out.ciphertext);
    return out;
  }

  std::optional<Bytes> open_mr(ByteView nonce, ByteView ad, ByteView ciphertext,
                               ByteView tag) const {
    check_open_args(AeadMode::misuse_resistant, nonce, ciphertext, tag);
    Bytes padded(ciphertext.begin(), ciphertext.end());
    apply_keystream(nonce, to_array<kBlockLen>(tag, "tag"), padded);
    const Block expected = mr_tag(nonce, ad, padded);
    return release(std::move(padded), expected, tag);
  }

 private:
  static Block block_at(ByteView data, std::size_t index) {
    Block b;
    std::copy_n(data.begin() + index * kBlockLen, kBlockLen, b.begin());
    return b;
  }

  static void check_nonce(AeadMode mode, ByteView nonce) {
    if (nonce.size() != nonce_len(mode)) {
      throw std::invalid_argument(std::string(mode_name(mode)) + " nonce must be " +
                                  std::to_string(nonce_len(mode)) + " bytes, got " +
                                  std::to_string(nonce.size()));
    }
  }

  static void check_block_count(std::size_t blocks) {
    if (!fits_in_bytes(blocks, kLayout.nr_counter_len)) {
      throw std::invalid_argument("message too long for the block counter");
    }
  }

  static void check_open_args(AeadMode mode, ByteView nonce, ByteView ciphertext, ByteView tag) {
    check_nonce(mode, nonce);
    if (ciphertext.empty() || ciphertext.size() % kBlockLen != 0) {
      throw std::invalid_argument("ciphertext length must be a positive multiple of " +
                                  std::to_string(kBlockLen));
    }
    check_block_count(ciphertext.size() / kBlockLen);
    if (tag.size() != kTagLen) {
      throw std::invalid_argument("tag must be " + std::to_string(kTagLen) + " bytes");
    }
  }

  // auth xor (XOR over j of E~(K, 0000|N'|j, P_j)), then encrypted under
  // the 0001|0^4|N tweak. N' is the leading nr_nonce_len bytes of N.
  Block mr_tag(ByteView nonce, ByteView ad, ByteView padded) const {
    const ByteView short_nonce = nonce.first(kLayout.nr_nonce_len);
    Block acc = compute_auth(ad);
    for (std::size_t j = 0; j * kBlockLen < padded.size(); ++j) {
      xor_into(acc, tbc_.encrypt(encode_nr_msg_tweak(kLayout, TweakPrefix::message, short_nonce, j),
                                 block_at(padded, j)));
    }
    return tbc_.encrypt(encode_mr_tag_tweak(kLayout, nonce), acc);
  }

  // data_j ^= E~(K, tag xor j, 0x00 || N).
  void apply_keystream(ByteView nonce, const Block& tag, std::span<std::uint8_t> data) const {
    Block counter_block{};
    std::copy(nonce.begin(), nonce.end(), counter_block.begin() + 1);
    for (std::size_t j = 0; j * kBlockLen < data.size(); ++j) {
      const Block stream = tbc_.encrypt(encode_mr_stream_tweak(tag, j), counter_block);
      xor_into(data.subspan(j * kBlockLen, kBlockLen), stream);
    }
  }

  // Padding is only examined after the tag check passes, and a bad pad is
  // reported exactly like a bad tag.
  static std::optional<Bytes> release(Bytes padded, const Block& expected, ByteView tag) {
    std::optional<Bytes> out;
    if (ct_equal(expected, tag)) out = pkcs7_unpad(padded, kBlockLen);
    secure_wipe(padded);
    return out;
  }

  Tweakable tbc_;
};

template <BlockCipher C, Xof X = Shake128>
typename C::Block compute_auth(ByteView key, ByteView ad) {
  return Aead<C, X>(key).compute_auth(ad);
}

template <BlockCipher C = Aes128>
SealedMessage seal_nr(ByteView key, ByteView nonce, ByteView ad, ByteView plaintext) {
  return Aead<C>(key).seal_nr(nonce, ad, plaintext);
}

template <BlockCipher C = Aes128>
std::optional<Bytes> open_nr(ByteView key, ByteView nonce, ByteView ad, ByteView ciphertext,
                             ByteView tag) {
  return Aead<C>(key).open_nr(nonce, ad, ciphertext, tag);
}

template <BlockCipher C = Aes128>
SealedMessage seal_mr(ByteView key, ByteView nonce, ByteView ad, ByteView plaintext) {
  return Aead<C>(key).seal_mr(nonce, ad, plaintext);
}

template <BlockCipher C = Aes128>
std::optional<Bytes> open_mr(ByteView key, ByteView nonce, ByteView ad, ByteView ciphertext,
                             ByteView tag) {
  return Aead<C>(key).open_mr(nonce, ad, ciphertext, tag);
}

}  // namespace tortoise

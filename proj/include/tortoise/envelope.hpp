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

// File envelope for sealed messages (all integers big-endian):
//   "TORT" | version 0x01 | mode | nonce_len | nonce | tag (16) |
//   ct_len (8) | ciphertext (ct_len)
// The associated data is never stored; it is supplied again at open.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "tortoise/aead.hpp"
#include "tortoise/block_cipher.hpp"
#include "tortoise/bytes.hpp"

namespace tortoise {

class EnvelopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::array<std::uint8_t, 4> kEnvelopeMagic = {'T', 'O', 'R', 'T'};
inline constexpr std::uint8_t kEnvelopeVersion = 0x01;
inline constexpr std::size_t kEnvelopeTagLen = Aes128::kBlockLen;

inline std::size_t envelope_nonce_len(AeadMode mode) { return Aead<Aes128>::nonce_len(mode); }

inline void validate_envelope(const SealedMessage& msg) {
  if (msg.mode != AeadMode::nonce_respecting && msg.mode != AeadMode::misuse_resistant) {
    throw EnvelopeError("unknown mode byte");
  }
  if (msg.nonce.size() != envelope_nonce_len(msg.mode)) {
    throw EnvelopeError("nonce length does not match mode");
  }
  if (msg.tag.size() != kEnvelopeTagLen) throw EnvelopeError("tag must be 16 bytes");
  if (msg.ciphertext.empty() || msg.ciphertext.size() % Aes128::kBlockLen != 0) {
    throw EnvelopeError("ciphertext length must be a positive multiple of 16");
  }
}

inline Bytes serialize_envelope(const SealedMessage& msg) {
  validate_envelope(msg);
  Bytes out(kEnvelopeMagic.begin(), kEnvelopeMagic.end());
  out.push_back(kEnvelopeVersion);
  out.push_back(static_cast<std::uint8_t>(msg.mode));
  out.push_back(static_cast<std::uint8_t>(msg.nonce.size()));
  out.insert(out.end(), msg.nonce.begin(), msg.nonce.end());
  out.insert(out.end(), msg.tag.begin(), msg.tag.end());
  std::array<std::uint8_t, 8> len{};
  store_be(msg.ciphertext.size(), len);
  out.insert(out.end(), len.begin(), len.end());
  out.insert(out.end(), msg.ciphertext.begin(), msg.ciphertext.end());
  return out;
}

inline SealedMessage parse_envelope(ByteView data) {
  std::size_t pos = 0;
  auto take = [&](std::size_t n) {
    if (data.size() - pos < n) throw EnvelopeError("envelope truncated");
    ByteView field = data.subspan(pos, n);
    pos += n;
    return field;
  };

  if (!std::ranges::equal(take(4), kEnvelopeMagic)) throw EnvelopeError("bad magic");
  if (take(1)[0] != kEnvelopeVersion) throw EnvelopeError("unsupported envelope version");
  const std::uint8_t mode_byte = take(1)[0];
  if (mode_byte > 0x01) throw EnvelopeError("unknown mode byte");

  SealedMessage msg;
  msg.mode = static_cast<AeadMode>(mode_byte);
  const std::size_t nonce_len = take(1)[0];
  if (nonce_len != envelope_nonce_len(msg.mode)) {
    throw EnvelopeError("nonce length does not match mode");
  }
  const ByteView nonce = take(nonce_len);
  msg.nonce.assign(nonce.begin(), nonce.end());
  const ByteView tag = take(kEnvelopeTagLen);
  msg.tag.assign(tag.begin(), tag.end());

  std::uint64_t ct_len = 0;
  for (std::uint8_t b : take(8)) ct_len = (ct_len << 8) | b;
  if (ct_len != data.size() - pos) throw EnvelopeError("ciphertext length mismatch");
  const ByteView ct = take(static_cast<std::size_t>(ct_len));
  msg.ciphertext.assign(ct.begin(), ct.end());
  validate_envelope(msg);
  return msg;
}

}  // namespace tortoise

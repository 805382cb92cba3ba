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

// Byte-string helpers shared by every layer: hex codecs, big-endian
// integer packing, XOR and constant-time comparison.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tortoise {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Block indices and counters may need the full 120 bits of an AES tweak.
__extension__ using uint128 = unsigned __int128;

inline Bytes to_bytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

inline std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

namespace detail {
constexpr int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace detail

/// Decodes a hex string; returns nullopt on odd length or a non-hex digit.
inline std::optional<Bytes> try_from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) return std::nullopt;
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = detail::hex_value(hex[2 * i]);
    int lo = detail::hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

inline Bytes from_hex(std::string_view hex) {
  auto out = try_from_hex(hex);
  if (!out) throw std::invalid_argument("invalid hex string");
  return *std::move(out);
}

/// Writes `value` big-endian into `out`, which must be wide enough to hold it.
inline void store_be(uint128 value, std::span<std::uint8_t> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<std::uint8_t>(value);
    value >>= 8;
  }
  if (value != 0) throw std::invalid_argument("value does not fit field");
}

/// True when `value` fits in `bytes` bytes.
constexpr bool fits_in_bytes(uint128 value, std::size_t bytes) {
  if (bytes >= 16) return true;
  return (value >> (8 * bytes)) == 0;
}

inline void xor_into(std::span<std::uint8_t> dst, ByteView src) {
  if (dst.size() != src.size()) throw std::invalid_argument("xor length mismatch");
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

/// Compares two byte strings in time that depends only on their lengths.
inline bool ct_equal(ByteView a, ByteView b) {
  if (a.size() != b.size()) return false;
  volatile std::uint8_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff = diff | (a[i] ^ b[i]);
  return diff == 0;
}

inline void secure_wipe(std::span<std::uint8_t> data) {
  volatile std::uint8_t* p = data.data();
  for (std::size_t i = 0; i < data.size(); ++i) p[i] = 0;
}

}  // namespace tortoise

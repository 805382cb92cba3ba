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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "tortoise/bytes.hpp"

namespace tortoise {

/// PKCS#7: always appends k bytes of value k, 1 <= k <= block_len.
inline Bytes pkcs7_pad(ByteView data, std::size_t block_len) {
  if (block_len < 1 || block_len > 255) throw std::invalid_argument("pkcs7: block length must be 1..255");
  const std::size_t k = block_len - data.size() % block_len;
  Bytes out(data.begin(), data.end());
  out.insert(out.end(), k, static_cast<std::uint8_t>(k));
  return out;
}

/// Strips a PKCS#7 pad. Returns nullopt for a malformed pad or a length
/// that is not a positive multiple of block_len. The pad bytes are all
/// inspected regardless of where the first mismatch is.
inline std::optional<Bytes> pkcs7_unpad(ByteView data, std::size_t block_len) {
  if (block_len < 1 || block_len > 255) throw std::invalid_argument("pkcs7: block length must be 1..255");
  if (data.empty() || data.size() % block_len != 0) return std::nullopt;
  const std::size_t k = data.back();
  if (k == 0 || k > block_len) return std::nullopt;
  std::uint8_t bad = 0;
  for (std::size_t i = data.size() - k; i < data.size(); ++i) bad |= data[i] ^ static_cast<std::uint8_t>(k);
  if (bad != 0) return std::nullopt;
  return Bytes(data.begin(), data.end() - static_cast<std::ptrdiff_t>(k));
}

}  // namespace tortoise

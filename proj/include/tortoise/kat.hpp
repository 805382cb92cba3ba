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

// Known-answer vectors: a line-oriented text format, a seeded generator,
// a replaying verifier, and a brute-force differential check of the
// framework over the toy cipher.
//
// One record per line, fields in fixed order, lowercase hex:
//   mode=nr cipher=aes128 key=.. nonce=.. ad=.. pt=.. ct=.. tag=..
// Lines starting with '#' and blank lines are ignored.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tortoise/aead.hpp"
#include "tortoise/block_cipher.hpp"
#include "tortoise/bytes.hpp"
#include "tortoise/tweakable.hpp"
#include "tortoise/xof.hpp"

namespace tortoise {

struct KatRecord {
  AeadMode mode = AeadMode::nonce_respecting;
  std::string cipher;
  Bytes key;
  Bytes nonce;
  Bytes ad;
  Bytes pt;
  Bytes ct;
  Bytes tag;

  friend bool operator==(const KatRecord&, const KatRecord&) = default;
};

class KatParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::array<std::string_view, 8> kKatFieldNames = {
    "mode", "cipher", "key", "nonce", "ad", "pt", "ct", "tag"};

inline std::string serialize_kat(const KatRecord& r) {
  std::string line;
  line += "mode=";
  line += mode_name(r.mode);
  line += " cipher=" + r.cipher;
  line += " key=" + to_hex(r.key);
  line += " nonce=" + to_hex(r.nonce);
  line += " ad=" + to_hex(r.ad);
  line += " pt=" + to_hex(r.pt);
  line += " ct=" + to_hex(r.ct);
  line += " tag=" + to_hex(r.tag);
  return line;
}

inline KatRecord parse_kat_line(std::string_view line) {
  std::array<std::string_view, kKatFieldNames.size()> values;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < kKatFieldNames.size(); ++f) {
    const std::size_t end = std::min(line.find(' ', pos), line.size());
    const std::string_view token = line.substr(pos, end - pos);
    const std::size_t eq = token.find('=');
    if (eq == std::string_view::npos || token.substr(0, eq) != kKatFieldNames[f]) {
      throw KatParseError("expected field '" + std::string(kKatFieldNames[f]) + "'");
    }
    values[f] = token.substr(eq + 1);
    if (end == line.size() && f + 1 < kKatFieldNames.size()) {
      throw KatParseError("record ends before field '" + std::string(kKatFieldNames[f + 1]) + "'");
    }
    pos = end + 1;
  }
  if (pos < line.size()) throw KatParseError("trailing data after 'tag'");

  KatRecord r;
  auto mode = parse_mode(values[0]);
  if (!mode) throw KatParseError("unknown mode '" + std::string(values[0]) + "'");
  r.mode = *mode;
  r.cipher = std::string(values[1]);
  Bytes* const targets[] = {&r.key, &r.nonce, &r.ad, &r.pt, &r.ct, &r.tag};
  for (std::size_t f = 2; f < values.size(); ++f) {
    auto decoded = try_from_hex(values[f]);
    if (!decoded) throw KatParseError("field '" + std::string(kKatFieldNames[f]) + "' is not hex");
    *targets[f - 2] = *std::move(decoded);
  }
  return r;
}

namespace detail {

inline Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng() & 0xff);
  return out;
}

inline std::vector<std::string_view> ciphers_for(std::string_view selection) {
  if (selection == "all") return {kCipherNames.begin(), kCipherNames.end()};
  with_cipher(selection, [](auto) {});  // validates the name
  return {selection};
}

}  // namespace detail

/// Deterministic in (seed, count, cipher). Emits `count` records per mode
/// for each selected cipher; `cipher` is a registered name or "all".
/// Inputs come straight from the mt19937_64 output stream, which the
/// standard pins bit-for-bit, so the result is platform independent.
inline std::vector<KatRecord> generate_kats(std::uint64_t seed, std::size_t count,
                                            std::string_view cipher = Aes128::kName) {
  if (count < 1) throw std::invalid_argument("kat count must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<KatRecord> records;
  for (std::string_view name : detail::ciphers_for(cipher)) {
    with_cipher(name, [&]<class C>(std::type_identity<C>) {
      for (AeadMode mode : {AeadMode::nonce_respecting, AeadMode::misuse_resistant}) {
        for (std::size_t i = 0; i < count; ++i) {
          KatRecord r;
          r.mode = mode;
          r.cipher = std::string(C::kName);
          r.key = detail::random_bytes(rng, C::kKeyLen);
          r.nonce = detail::random_bytes(rng, Aead<C>::nonce_len(mode));
          r.ad = detail::random_bytes(rng, rng() % (2 * C::kBlockLen + 4));
          r.pt = detail::random_bytes(rng, rng() % (3 * C::kBlockLen + 6));
          const SealedMessage sealed = Aead<C>(r.key).seal(mode, r.nonce, r.ad, r.pt);
          r.ct = sealed.ciphertext;
          r.tag = sealed.tag;
          records.push_back(std::move(r));
        }
      }
    });
  }
  return records;
}

struct KatCorpusParams {
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::string cipher = std::string(Aes128::kName);

  friend bool operator==(const KatCorpusParams&, const KatCorpusParams&) = default;
};

/// Full corpus text: a header recording the generation parameters, then
/// one record per line.
inline std::string write_kat_corpus(const KatCorpusParams& params) {
  std::string out = "# tortoise known-answer vectors\n";
  out += "# seed=" + std::to_string(params.seed) + " count=" + std::to_string(params.count) +
         " cipher=" + params.cipher + "\n";
  for (const auto& r : generate_kats(params.seed, params.count, params.cipher)) {
    out += serialize_kat(r);
    out += '\n';
  }
  return out;
}

/// Recovers the generation parameters from a corpus header, if present.
inline std::optional<KatCorpusParams> read_kat_corpus_params(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# seed=", 0) != 0) continue;
    KatCorpusParams p;
    std::istringstream fields(line.substr(2));
    std::string token;
    bool have_seed = false, have_count = false;
    try {
      while (fields >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq), value = token.substr(eq + 1);
        if (key == "seed") p.seed = std::stoull(value), have_seed = true;
        else if (key == "count") p.count = std::stoull(value), have_count = true;
        else if (key == "cipher") p.cipher = value;
      }
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (have_seed && have_count) return p;
  }
  return std::nullopt;
}

enum class KatStatus { pass, fail, parse_error };

struct KatOutcome {
  std::size_t line = 0;
  KatStatus status = KatStatus::pass;
  std::string detail;
};

struct KatReport {
  std::vector<KatOutcome> outcomes;

  std::size_t count(KatStatus s) const {
    std::size_t n = 0;
    for (const auto& o : outcomes) n += o.status == s;
    return n;
  }
  bool ok() const { return count(KatStatus::pass) == outcomes.size(); }
};

/// Replays one record: seal must reproduce (ct, tag) and open must return pt.
/// `X` selects the SHAKE128 back end the framework is instantiated with.
template <Xof X = Shake128>
KatOutcome verify_kat(const KatRecord& r) {
  KatOutcome out;
  try {
    with_cipher(r.cipher, [&]<class C>(std::type_identity<C>) {
      if (r.key.size() != C::kKeyLen) throw std::invalid_argument("key length");
      if (r.nonce.size() != Aead<C, X>::nonce_len(r.mode)) throw std::invalid_argument("nonce length");
      if (r.tag.size() != Aead<C, X>::kTagLen) throw std::invalid_argument("tag length");
      const Aead<C, X> aead(r.key);
      const SealedMessage sealed = aead.seal(r.mode, r.nonce, r.ad, r.pt);
      if (sealed.ciphertext != r.ct) {
        out.status = KatStatus::fail;
        out.detail = "ciphertext mismatch";
      } else if (sealed.tag != r.tag) {
        out.status = KatStatus::fail;
        out.detail = "tag mismatch";
      } else if (aead.open(r.mode, r.nonce, r.ad, r.ct, r.tag) != std::optional<Bytes>(r.pt)) {
        out.status = KatStatus::fail;
        out.detail = "open did not return the plaintext";
      }
    });
  } catch (const std::invalid_argument& e) {
    out.status = KatStatus::fail;
    out.detail = e.what();
  }
  return out;
}

/// Verifies every record in a corpus. Parse errors are reported per line
/// and do not stop the run.
template <Xof X = Shake128>
KatReport verify_kats(std::string_view text) {
  KatReport report;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    KatOutcome outcome;
    try {
      outcome = verify_kat<X>(parse_kat_line(line));
    } catch (const KatParseError& e) {
      outcome.status = KatStatus::parse_error;
      outcome.detail = e.what();
    } catch (const std::invalid_argument& e) {
      outcome.status = KatStatus::parse_error;
      outcome.detail = e.what();
    }
    outcome.line = line_no;
    report.outcomes.push_back(std::move(outcome));
  }
  return report;
}

namespace reference {

// Nibble-array model of ToyCipher, written independently of its word-level
// implementation. Nibble 0 is the most significant.
class ToyReference {
 public:
  explicit ToyReference(std::uint16_t key) {
    for (std::size_t r = 0; r < round_keys_.size(); ++r) {
      const unsigned s = static_cast<unsigned>(5 * r) % 16;
      const unsigned rotated = s == 0 ? key : ((key << s) | (key >> (16 - s))) & 0xffffu;
      round_keys_[r] = split(static_cast<std::uint16_t>(rotated ^ ToyCipher::kRoundConstants[r]));
    }
  }

  std::uint16_t encrypt(std::uint16_t block) const {
    auto state = split(block);
    for (std::size_t r = 0; r < ToyCipher::kRounds; ++r) {
      for (std::size_t i = 0; i < 4; ++i) state[i] = ToyCipher::kSbox[state[i] ^ round_keys_[r][i]];
      state = {state[1], state[2], state[3], state[0]};
    }
    for (std::size_t i = 0; i < 4; ++i) state[i] ^= round_keys_[ToyCipher::kRounds][i];
    return join(state);
  }

  /// Inverse by exhaustive search over all 2^16 blocks.
  std::optional<std::uint16_t> brute_force_decrypt(std::uint16_t ciphertext) const {
    for (std::uint32_t p = 0; p <= 0xffff; ++p) {
      if (encrypt(static_cast<std::uint16_t>(p)) == ciphertext) return static_cast<std::uint16_t>(p);
    }
    return std::nullopt;
  }

 private:
  using Nibbles = std::array<std::uint8_t, 4>;

  static Nibbles split(std::uint16_t v) {
    return {static_cast<std::uint8_t>(v >> 12), static_cast<std::uint8_t>((v >> 8) & 0xf),
            static_cast<std::uint8_t>((v >> 4) & 0xf), static_cast<std::uint8_t>(v & 0xf)};
  }
  static std::uint16_t join(const Nibbles& n) {
    return static_cast<std::uint16_t>((n[0] << 12) | (n[1] << 8) | (n[2] << 4) | n[3]);
  }

  std::array<Nibbles, ToyCipher::kRounds + 1> round_keys_{};
};

}  // namespace reference

struct DifferentialReport {
  std::size_t tweak_checks = 0;
  std::size_t round_trips = 0;
  std::size_t forgery_checks = 0;
  std::vector<std::string> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Instantiates the framework over the toy cipher and checks, per trial,
/// that tweak_encrypt equals SHAKE128(K || T) composed with the reference
/// toy permutation, and that tweak_decrypt equals the brute-force inverse.
/// Then round-trips seal/open for plaintext lengths 0..3n in both modes
/// and confirms a corrupted tag is rejected.
inline DifferentialReport differential_check(std::size_t trials, std::uint64_t seed = 1) {
  if (trials < 1) throw std::invalid_argument("differential check needs >= 1 trial");
  using Tbc = TweakableCipher<ToyCipher>;
  constexpr TweakLayout layout = Tbc::kLayout;
  constexpr std::size_t n = ToyCipher::kBlockLen;

  DifferentialReport report;
  std::mt19937_64 rng(seed);
  auto word = [&] { return static_cast<std::uint16_t>(rng() & 0xffff); };
  auto be_bytes = [](std::uint16_t v) {
    return ToyCipher::Block{static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
  };

  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint16_t key = word();
    const std::uint16_t plain = word();
    Tweak tweak;
    switch (t % 4) {
      case 0: tweak = encode_ad_tweak(layout, rng() & 0xff); break;
      case 1:
        tweak = encode_nr_msg_tweak(layout, (rng() & 1) ? TweakPrefix::tag : TweakPrefix::message,
                                    detail::random_bytes(rng, layout.nr_nonce_len), rng() & 0xff);
        break;
      case 2: tweak = encode_mr_tag_tweak(layout, detail::random_bytes(rng, layout.mr_nonce_len())); break;
      default: tweak = encode_mr_stream_tweak(be_bytes(word()), rng() & 0xffff); break;
    }

    Bytes hash_input{static_cast<std::uint8_t>(key >> 8), static_cast<std::uint8_t>(key)};
    hash_input.insert(hash_input.end(), tweak.raw().begin(), tweak.raw().end());
    const Bytes stream = shake128(hash_input, ToyCipher::kKeyLen + n);
    const reference::ToyReference ref(static_cast<std::uint16_t>((stream[0] << 8) | stream[1]));
    const auto mask = static_cast<std::uint16_t>((stream[2] << 8) | stream[3]);
    const std::uint16_t expected_ct = ref.encrypt(plain) ^ mask;

    const Tbc tbc(be_bytes(key));
    const ToyCipher::Block got_ct = tbc.encrypt(tweak, be_bytes(plain));
    const std::uint16_t probe = word();
    const auto inverse = ref.brute_force_decrypt(probe ^ mask);
    const ToyCipher::Block got_pt = tbc.decrypt(tweak, be_bytes(probe));
    ++report.tweak_checks;

    std::ostringstream where;
    where << "trial " << t << " key=" << to_hex(be_bytes(key)) << " tweak=" << to_hex(tweak.raw())
          << " block=" << to_hex(be_bytes(plain));
    if (got_ct != be_bytes(expected_ct)) {
      report.mismatches.push_back(where.str() + ": tweak_encrypt " + to_hex(got_ct) +
                                  " != oracle " + to_hex(be_bytes(expected_ct)));
    }
    if (!inverse || got_pt != be_bytes(*inverse)) {
      report.mismatches.push_back(where.str() + ": tweak_decrypt of " + to_hex(be_bytes(probe)) +
                                  " disagrees with brute-force inverse");
    }
  }

  const Aead<ToyCipher> aead(detail::random_bytes(rng, ToyCipher::kKeyLen));
  const Bytes ad = detail::random_bytes(rng, n + 1);
  for (AeadMode mode : {AeadMode::nonce_respecting, AeadMode::misuse_resistant}) {
    const Bytes nonce = detail::random_bytes(rng, Aead<ToyCipher>::nonce_len(mode));
    for (std::size_t len = 0; len <= 3 * n; ++len) {
      const Bytes pt = detail::random_bytes(rng, len);
      const SealedMessage sealed = aead.seal(mode, nonce, ad, pt);
      ++report.round_trips;
      if (aead.open(sealed, ad) != std::optional<Bytes>(pt)) {
        report.mismatches.push_back(std::string(mode_name(mode)) + " round trip failed for pt=" +
                                    to_hex(pt));
      }
    }
    SealedMessage forged = aead.seal(mode, nonce, ad, detail::random_bytes(rng, n));
    forged.tag[0] ^= 0x01;
    ++report.forgery_checks;
    if (aead.open(forged, ad).has_value()) {
      report.mismatches.push_back(std::string(mode_name(mode)) + " accepted a corrupted tag");
    }
  }
  return report;
}

}  // namespace tortoise

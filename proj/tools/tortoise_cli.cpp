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

// tortoise: seal and open files, and manage known-answer vectors.
//
// Exit codes: 0 success, 1 usage/IO/malformed input, 2 authentication
// failure, 3 at least one KAT or differential check failed.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "tortoise/tortoise.hpp"

namespace {

using tortoise::Bytes;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAuth = 2;
constexpr int kExitKatFailure = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Writes to a sibling temporary and renames it into place, so a reader
// never sees a partially written output file.
void write_file_atomic(const std::string& path, tortoise::ByteView data) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + tmp.string() + "'");
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw UsageError("write to '" + tmp.string() + "' failed");
    }
  }
  std::filesystem::rename(tmp, target);
}

Bytes parse_hex_arg(const std::string& hex, const std::string& what) {
  auto bytes = tortoise::try_from_hex(hex);
  if (!bytes) throw UsageError(what + " is not valid hex");
  return *std::move(bytes);
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

struct KeyOptions {
  std::string key_hex;
  std::string key_file;
  std::string ad_hex;
  std::string ad_file;

  void add_to(CLI::App& cmd) {
    auto* hex = cmd.add_option("--key-hex", key_hex, "16-byte key as hex");
    auto* file = cmd.add_option("--key-file", key_file, "file holding the key (16 raw bytes or hex)");
    hex->excludes(file);
    auto* ad = cmd.add_option("--ad-hex", ad_hex, "associated data as hex (default empty)");
    auto* adf = cmd.add_option("--ad-file", ad_file, "file holding the associated data");
    ad->excludes(adf);
  }

  Bytes key() const {
    Bytes key;
    if (!key_hex.empty()) {
      key = parse_hex_arg(key_hex, "--key-hex");
    } else if (!key_file.empty()) {
      key = read_file(key_file);
      if (key.size() != tortoise::Aes128::kKeyLen) {
        key = parse_hex_arg(trim(std::string(key.begin(), key.end())), "--key-file contents");
      }
    } else {
      throw UsageError("one of --key-hex or --key-file is required");
    }
    if (key.size() != tortoise::Aes128::kKeyLen) {
      throw UsageError("key must be 16 bytes, got " + std::to_string(key.size()));
    }
    return key;
  }

  Bytes ad() const {
    if (!ad_file.empty()) return read_file(ad_file);
    return parse_hex_arg(ad_hex, "--ad-hex");
  }
};

Bytes random_nonce(std::size_t len) {
  std::random_device entropy;
  Bytes nonce(len);
  for (auto& b : nonce) b = static_cast<std::uint8_t>(entropy());
  return nonce;
}

int cmd_encrypt(const KeyOptions& keys, const std::string& mode_name, const std::string& nonce_hex,
                const std::string& in_path, const std::string& out_path) {
  const auto mode = tortoise::parse_mode(mode_name);
  if (!mode) throw UsageError("--mode must be nr or mr");
  const Bytes key = keys.key();
  const std::size_t nonce_len = tortoise::envelope_nonce_len(*mode);
  const Bytes nonce = nonce_hex.empty() ? random_nonce(nonce_len) : parse_hex_arg(nonce_hex, "--nonce-hex");
  if (nonce.size() != nonce_len) {
    throw UsageError(std::string(tortoise::mode_name(*mode)) + " nonce must be " +
                     std::to_string(nonce_len) + " bytes");
  }
  const Bytes plaintext = read_file(in_path);
  const tortoise::Aead<tortoise::Aes128> aead(key);
  write_file_atomic(out_path, tortoise::serialize_envelope(aead.seal(*mode, nonce, keys.ad(), plaintext)));
  return kExitOk;
}

int cmd_decrypt(const KeyOptions& keys, const std::string& in_path, const std::string& out_path) {
  const Bytes key = keys.key();
  const Bytes ad = keys.ad();
  tortoise::SealedMessage msg;
  try {
    msg = tortoise::parse_envelope(read_file(in_path));
  } catch (const tortoise::EnvelopeError& e) {
    throw UsageError(std::string("malformed envelope: ") + e.what());
  }
  const tortoise::Aead<tortoise::Aes128> aead(key);
  auto plaintext = aead.open(msg, ad);
  if (!plaintext) {
    std::cerr << "tortoise: authentication failed\n";
    return kExitAuth;
  }
  write_file_atomic(out_path, *plaintext);
  return kExitOk;
}

int cmd_kat_generate(const tortoise::KatCorpusParams& params, const std::string& out_path) {
  const std::string text = tortoise::write_kat_corpus(params);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_file_atomic(out_path, tortoise::to_bytes(text));
  }
  return kExitOk;
}

int cmd_kat_verify(const std::string& path) {
  const Bytes raw = read_file(path);
  const auto report = tortoise::verify_kats(std::string(raw.begin(), raw.end()));
  for (const auto& o : report.outcomes) {
    if (o.status == tortoise::KatStatus::pass) continue;
    std::cerr << path << ":" << o.line << ": "
              << (o.status == tortoise::KatStatus::parse_error ? "parse error: " : "FAIL: ") << o.detail
              << "\n";
  }
  std::cout << report.count(tortoise::KatStatus::pass) << "/" << report.outcomes.size()
            << " vectors passed\n";
  return report.ok() ? kExitOk : kExitKatFailure;
}

int cmd_kat_diff(std::size_t trials, std::uint64_t seed) {
  const auto report = tortoise::differential_check(trials, seed);
  for (const auto& m : report.mismatches) std::cerr << "mismatch: " << m << "\n";
  std::cout << report.tweak_checks << " tweak checks, " << report.round_trips << " round trips, "
            << report.forgery_checks << " forgery checks, " << report.mismatches.size()
            << " mismatches\n";
  return report.ok() ? kExitOk : kExitKatFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tortoise authenticated encryption"};
  app.require_subcommand(1);

  KeyOptions enc_keys;
  std::string mode = "nr", nonce_hex, enc_in, enc_out;
  bool nonce_random = false;
  auto* encrypt = app.add_subcommand("encrypt", "seal a file into an envelope");
  enc_keys.add_to(*encrypt);
  encrypt->add_option("--mode", mode, "nr (nonce-respecting) or mr (misuse-resistant)")
      ->check(CLI::IsMember({"nr", "mr"}));
  auto* nonce_opt = encrypt->add_option("--nonce-hex", nonce_hex, "explicit nonce (8 bytes nr, 15 bytes mr)");
  encrypt->add_flag("--nonce-random", nonce_random, "draw the nonce from system entropy (default)")
      ->excludes(nonce_opt);
  encrypt->add_option("--in", enc_in, "plaintext file")->required();
  encrypt->add_option("--out", enc_out, "envelope output file")->required();

  KeyOptions dec_keys;
  std::string dec_in, dec_out;
  auto* decrypt = app.add_subcommand("decrypt", "open an envelope");
  dec_keys.add_to(*decrypt);
  decrypt->add_option("--in", dec_in, "envelope file")->required();
  decrypt->add_option("--out", dec_out, "plaintext output file")->required();

  auto* kat = app.add_subcommand("kat", "known-answer vector tools");
  kat->require_subcommand(1);
  tortoise::KatCorpusParams gen_params;
  std::string gen_out;
  auto* generate = kat->add_subcommand("generate", "write a seeded KAT corpus");
  generate->add_option("--seed", gen_params.seed, "generator seed")->required();
  generate->add_option("--count", gen_params.count, "records per mode and cipher")
      ->required()
      ->check(CLI::PositiveNumber);
  generate->add_option("--cipher", gen_params.cipher, "aes128, toy16 or all")
      ->check(CLI::IsMember({"aes128", "toy16", "all"}));
  generate->add_option("--out", gen_out, "output file (default stdout)");

  std::string verify_path;
  auto* verify = kat->add_subcommand("verify", "replay a KAT corpus");
  verify->add_option("file", verify_path, "corpus file")->required();

  std::size_t trials = 1000;
  std::uint64_t diff_seed = 1;
  auto* diff = kat->add_subcommand("diff", "differential check over the toy cipher");
  diff->add_option("--trials", trials, "number of tweak trials")->check(CLI::PositiveNumber);
  diff->add_option("--seed", diff_seed, "trial seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*encrypt) return cmd_encrypt(enc_keys, mode, nonce_hex, enc_in, enc_out);
    if (*decrypt) return cmd_decrypt(dec_keys, dec_in, dec_out);
    if (*generate) return cmd_kat_generate(gen_params, gen_out);
    if (*verify) return cmd_kat_verify(verify_path);
    if (*diff) return cmd_kat_diff(trials, diff_seed);
  } catch (const std::exception& e) {
    std::cerr << "tortoise: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

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

#include "tortoise/kat.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace tortoise {
namespace {

std::string read_corpus() {
  std::ifstream in(TORTOISE_KAT_CORPUS);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TEST(KatFormatTest, SerializeParseRoundTrip) {
  for (const auto& r : generate_kats(3, 4, "all")) {
    const std::string line = serialize_kat(r);
    EXPECT_EQ(parse_kat_line(line), r);
    EXPECT_EQ(serialize_kat(parse_kat_line(line)), line);
  }
}

TEST(KatFormatTest, EmptyFieldsSerializeAsBareEquals) {
  KatRecord r;
  r.cipher = "aes128";
  r.key = Bytes(16, 0);
  r.nonce = Bytes(8, 0);
  r.ct = Bytes(16, 0xab);
  r.tag = Bytes(16, 0xcd);
  const std::string line = serialize_kat(r);
  EXPECT_NE(line.find(" ad= pt= ct="), std::string::npos);
  EXPECT_EQ(parse_kat_line(line), r);
}

TEST(KatFormatTest, ParseErrors) {
  EXPECT_THROW(parse_kat_line(""), KatParseError);
  EXPECT_THROW(parse_kat_line("mode=nr cipher=aes128"), KatParseError);
  EXPECT_THROW(parse_kat_line("cipher=aes128 mode=nr key= nonce= ad= pt= ct= tag="), KatParseError);
  EXPECT_THROW(parse_kat_line("mode=xx cipher=aes128 key= nonce= ad= pt= ct= tag="), KatParseError);
  EXPECT_THROW(parse_kat_line("mode=nr cipher=aes128 key=0g nonce= ad= pt= ct= tag="), KatParseError);
  EXPECT_THROW(parse_kat_line("mode=nr cipher=aes128 key=0 nonce= ad= pt= ct= tag="), KatParseError);
  EXPECT_THROW(parse_kat_line("mode=nr cipher=aes128 key= nonce= ad= pt= ct= tag= extra=1"), KatParseError);
}

TEST(KatGenerateTest, DeterministicPerSeed) {
  EXPECT_EQ(generate_kats(42, 6), generate_kats(42, 6));
  EXPECT_NE(generate_kats(42, 6), generate_kats(43, 6));
}

TEST(KatGenerateTest, CountIsPerMode) {
  const auto records = generate_kats(1, 5);
  ASSERT_EQ(records.size(), 10u);
  std::size_t nr = 0;
  for (const auto& r : records) nr += r.mode == AeadMode::nonce_respecting;
  EXPECT_EQ(nr, 5u);
  EXPECT_EQ(generate_kats(1, 5, "all").size(), 20u);
  EXPECT_THROW(generate_kats(1, 0), std::invalid_argument);
  EXPECT_THROW(generate_kats(1, 1, "des"), std::invalid_argument);
}

TEST(KatGenerateTest, CorpusHeaderRecordsParameters) {
  const KatCorpusParams params{99, 2, "toy16"};
  const std::string text = write_kat_corpus(params);
  EXPECT_EQ(read_kat_corpus_params(text), std::optional<KatCorpusParams>(params));
  EXPECT_FALSE(read_kat_corpus_params("# nothing here\n").has_value());
}

TEST(KatVerifyTest, CommittedCorpusPasses) {
  const std::string text = read_corpus();
  ASSERT_FALSE(text.empty());
  const KatReport report = verify_kats(text);
  EXPECT_GT(report.outcomes.size(), 0u);
  EXPECT_TRUE(report.ok());
}

TEST(KatVerifyTest, CommittedCorpusPassesWithSwappedLaneStorage) {
  const KatReport report = verify_kats<BasicShake128<LaneOrder::swapped>>(read_corpus());
  EXPECT_GT(report.outcomes.size(), 0u);
  EXPECT_TRUE(report.ok());
}

TEST(KatVerifyTest, CommittedCorpusRegeneratesByteForByte) {
  const std::string text = read_corpus();
  const auto params = read_kat_corpus_params(text);
  ASSERT_TRUE(params.has_value());
  EXPECT_EQ(write_kat_corpus(*params), text);
}

TEST(KatVerifyTest, OneAlteredTagDigitGivesOneFailure) {
  std::string text = write_kat_corpus({5, 3, "all"});
  const std::size_t tag_pos = text.find(" tag=", text.find("mode=mr cipher=aes128")) + 5;
  text[tag_pos] = text[tag_pos] == '0' ? '1' : '0';
  const KatReport report = verify_kats(text);
  EXPECT_EQ(report.outcomes.size(), 12u);
  EXPECT_EQ(report.count(KatStatus::fail), 1u);
  EXPECT_EQ(report.count(KatStatus::parse_error), 0u);
}

TEST(KatVerifyTest, EmptyInputIsAnEmptySuccess) {
  const KatReport report = verify_kats("");
  EXPECT_TRUE(report.outcomes.empty());
  EXPECT_TRUE(report.ok());
}

TEST(KatVerifyTest, ParseErrorsDoNotAbortTheRun) {
  std::string text = "# header\n" + serialize_kat(generate_kats(8, 1)[0]) + "\ngarbage line\n\n" +
                     serialize_kat(generate_kats(8, 1)[1]) + "\n";
  const KatReport report = verify_kats(text);
  ASSERT_EQ(report.outcomes.size(), 3u);
  EXPECT_EQ(report.outcomes[0].status, KatStatus::pass);
  EXPECT_EQ(report.outcomes[1].status, KatStatus::parse_error);
  EXPECT_EQ(report.outcomes[1].line, 3u);
  EXPECT_EQ(report.outcomes[2].status, KatStatus::pass);
}

TEST(KatVerifyTest, InconsistentLengthsFail) {
  KatRecord r = generate_kats(8, 1)[0];
  r.nonce.push_back(0);
  EXPECT_EQ(verify_kat(r).status, KatStatus::fail);
  r = generate_kats(8, 1)[0];
  r.cipher = "nope";
  EXPECT_EQ(verify_kat(r).status, KatStatus::fail);
}

TEST(DifferentialCheckTest, ThousandTrialsAgree) {
  const DifferentialReport report = differential_check(1000);
  for (const auto& m : report.mismatches) ADD_FAILURE() << m;
  EXPECT_EQ(report.tweak_checks, 1000u);
  EXPECT_EQ(report.round_trips, 2u * 7u);
  EXPECT_EQ(report.forgery_checks, 2u);
}

TEST(DifferentialCheckTest, ReferenceModelMatchesToyCipher) {
  for (std::uint32_t key : {0x0000u, 0x1234u, 0xfedcu}) {
    const reference::ToyReference ref(static_cast<std::uint16_t>(key));
    const ToyCipher toy({static_cast<std::uint8_t>(key >> 8), static_cast<std::uint8_t>(key)});
    for (std::uint32_t p = 0; p < (1u << 16); p += 7) {
      const auto c = toy.encrypt_block({static_cast<std::uint8_t>(p >> 8), static_cast<std::uint8_t>(p)});
      ASSERT_EQ(ref.encrypt(static_cast<std::uint16_t>(p)), (c[0] << 8) | c[1]);
    }
  }
}

}  // namespace
}  // namespace tortoise

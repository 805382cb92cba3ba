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

#include "tortoise/block_cipher.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <thread>
#include <vector>

#include "openssl_oracle.hpp"

namespace tortoise {
namespace {

template <class A>
A random_array(std::mt19937_64& rng) {
  A a;
  for (auto& b : a) b = static_cast<std::uint8_t>(rng());
  return a;
}

TEST(Aes128Test, Fips197AppendixC1) {
  const Bytes key = from_hex("000102030405060708090a0b0c0d0e0f");
  const Bytes pt = from_hex("00112233445566778899aabbccddeeff");
  const Bytes ct = from_hex("69c4e0d86a7b0430d8cdb78070b4c55a");
  const auto enc = aes128_encrypt_block(key, pt);
  EXPECT_EQ(to_hex(enc), to_hex(ct));
  EXPECT_EQ(to_hex(aes128_decrypt_block(key, ct)), to_hex(pt));
}

TEST(Aes128Test, AllZeroKnownAnswer) {
  const Bytes zero(16, 0);
  EXPECT_EQ(to_hex(aes128_encrypt_block(zero, zero)), "66e94bd4ef8a2c3b884cfa59ca342b2e");
  EXPECT_EQ(to_hex(aes128_decrypt_block(zero, from_hex("66e94bd4ef8a2c3b884cfa59ca342b2e"))),
            to_hex(zero));
}

TEST(Aes128Test, MatchesOpenSsl) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto key = random_array<Aes128::Key>(rng);
    const auto block = random_array<Aes128::Block>(rng);
    const Aes128 aes(key);
    const oracle::Bytes okey(key.begin(), key.end());
    ASSERT_EQ(aes.encrypt_block(block), oracle::aes128_encrypt(okey, block));
    ASSERT_EQ(aes.decrypt_block(block), oracle::aes128_decrypt(okey, block));
  }
}

TEST(Aes128Test, RejectsWrongLengths) {
  const Bytes k15(15), k16(16), b15(15), b17(17), b16(16);
  EXPECT_THROW(aes128_encrypt_block(k15, b16), std::invalid_argument);
  EXPECT_THROW(aes128_encrypt_block(k16, b15), std::invalid_argument);
  EXPECT_THROW(aes128_decrypt_block(k16, b17), std::invalid_argument);
}

TEST(Aes128Test, SharedScheduleAcrossThreads) {
  std::mt19937_64 rng(5);
  const Aes128 aes(random_array<Aes128::Key>(rng));
  std::vector<Aes128::Block> inputs(256);
  for (auto& b : inputs) b = random_array<Aes128::Block>(rng);
  std::vector<Aes128::Block> serial;
  for (const auto& b : inputs) serial.push_back(aes.encrypt_block(b));

  std::vector<std::vector<Aes128::Block>> results(4);
  std::vector<std::thread> threads;
  for (auto& r : results) {
    threads.emplace_back([&aes, &inputs, &r] {
      for (const auto& b : inputs) r.push_back(aes.encrypt_block(b));
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& r : results) EXPECT_EQ(r, serial);
}

template <class C>
class CipherRoundTripTest : public ::testing::Test {};
using Ciphers = ::testing::Types<Aes128, ToyCipher>;
TYPED_TEST_SUITE(CipherRoundTripTest, Ciphers);

TYPED_TEST(CipherRoundTripTest, DecryptInvertsEncrypt) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10000; ++i) {
    const TypeParam cipher(random_array<typename TypeParam::Key>(rng));
    const auto block = random_array<typename TypeParam::Block>(rng);
    ASSERT_EQ(cipher.decrypt_block(cipher.encrypt_block(block)), block);
    ASSERT_EQ(cipher.encrypt_block(cipher.decrypt_block(block)), block);
  }
}

TEST(ToyCipherTest, EveryKeyInSampleIsAPermutation) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 16; ++k) {
    const ToyCipher toy(random_array<ToyCipher::Key>(rng));
    std::vector<bool> seen(1 << 16, false);
    for (std::uint32_t p = 0; p < (1u << 16); ++p) {
      const auto c = toy.encrypt_block({static_cast<std::uint8_t>(p >> 8), static_cast<std::uint8_t>(p)});
      const std::uint32_t idx = (c[0] << 8) | c[1];
      ASSERT_FALSE(seen[idx]) << "collision for key sample " << k;
      seen[idx] = true;
    }
  }
}

TEST(ToyCipherTest, ExhaustiveInverseForOneKey) {
  const ToyCipher toy({0x3c, 0xa5});
  for (std::uint32_t p = 0; p < (1u << 16); ++p) {
    const ToyCipher::Block b{static_cast<std::uint8_t>(p >> 8), static_cast<std::uint8_t>(p)};
    ASSERT_EQ(toy.decrypt_block(toy.encrypt_block(b)), b);
  }
}

TEST(ToyCipherTest, DistinctKeysGiveDistinctPermutations) {
  const ToyCipher a({0x00, 0x01}), b({0x00, 0x02});
  bool differ = false;
  for (std::uint32_t p = 0; p < (1u << 16) && !differ; ++p) {
    const ToyCipher::Block blk{static_cast<std::uint8_t>(p >> 8), static_cast<std::uint8_t>(p)};
    differ = a.encrypt_block(blk) != b.encrypt_block(blk);
  }
  EXPECT_TRUE(differ);
}

TEST(ToyCipherTest, FreeFunctionsCheckLengths) {
  const Bytes k2{1, 2}, b2{3, 4}, b3{1, 2, 3};
  EXPECT_EQ(toy_decrypt_block(k2, toy_encrypt_block(k2, b2)), (ToyCipher::Block{3, 4}));
  EXPECT_THROW(toy_encrypt_block(b3, b2), std::invalid_argument);
  EXPECT_THROW(toy_decrypt_block(k2, b3), std::invalid_argument);
}

TEST(CipherRegistryTest, DispatchesByName) {
  EXPECT_EQ(with_cipher("aes128", [](auto t) { return decltype(t)::type::kBlockLen; }), 16u);
  EXPECT_EQ(with_cipher("toy16", [](auto t) { return decltype(t)::type::kBlockLen; }), 2u);
  EXPECT_THROW(with_cipher("des", [](auto) { return 0; }), std::invalid_argument);
}

}  // namespace
}  // namespace tortoise

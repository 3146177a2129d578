#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "cipher.hpp"
#include "errors.hpp"
#include "gf64.hpp"
#include "sha256.hpp"
#include "support/oracles.hpp"

using namespace imgshare;

namespace {

std::vector<std::uint8_t> random_bytes(std::size_t size, std::mt19937_64 &rng) {
  std::vector<std::uint8_t> out(size);
  for (auto &b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

std::string hex_of(std::span<const std::uint8_t> bytes) {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

std::span<const std::uint8_t, 16> key_span(const std::vector<std::uint8_t> &key) {
  return std::span<const std::uint8_t, 16>(key.data(), 16);
}

}  // namespace

TEST_CASE("iv derivation: concat repeats the identifier bytes") {
  const Block iv = derive_iv(Gf64{0x0102030405060708ULL}, IvDerivation::kConcat);
  CHECK(hex_of(iv) == "01020304050607080102030405060708");
}

TEST_CASE("iv derivation: sha takes the first half of sha-256") {
  // sha256(00 00 00 00 00 00 00 00) begins af5570f5a1810b7a f78caf4bc70a660f.
  const Block zero_iv = derive_iv(Gf64::zero(), IvDerivation::kSha);
  CHECK(hex_of(zero_iv) == "af5570f5a1810b7af78caf4bc70a660f");

  const Block iv = derive_iv(Gf64{0x0102030405060708ULL}, IvDerivation::kSha);
  CHECK(hex_of(iv) == "66840dda154e8a113c31dd0ad32f7f3a");
}

TEST_CASE("distinct identifiers give distinct ivs") {
  std::mt19937_64 rng(0x1DED);
  for (IvDerivation derivation : {IvDerivation::kSha, IvDerivation::kConcat}) {
    std::set<std::uint64_t> seen;
    std::vector<Block> ivs;
    for (int i = 0; i < 10000; ++i) {
      std::uint64_t id = rng();
      if (!seen.insert(id).second) continue;
      ivs.push_back(derive_iv(Gf64{id}, derivation));
    }
    std::set<std::vector<std::uint8_t>> unique;
    for (const Block &iv : ivs) unique.emplace(iv.begin(), iv.end());
    CHECK(unique.size() == ivs.size());
  }
}

TEST_CASE("published known answers and openssl agreement") {
  auto kat = oracles::aes_known_answer_oracle();
  INFO(kat.first_failure);
  CHECK(kat.mismatches == 0);

  auto cross = oracles::aes_openssl_cross_check_oracle(0xA55, 100);
  INFO(cross.first_failure);
  CHECK(cross.mismatches == 0);
}

TEST_CASE("sha-256 known answers and openssl agreement") {
  auto report = oracles::sha256_known_answer_oracle();
  INFO(report.first_failure);
  CHECK(report.mismatches == 0);
}

TEST_CASE("roundtrip on random block-aligned messages") {
  std::mt19937_64 rng(0xC1C1E);
  for (int i = 0; i < 1000; ++i) {
    const auto key = random_bytes(16, rng);
    Block iv;
    for (auto &b : iv) b = static_cast<std::uint8_t>(rng());
    const auto message = random_bytes(16 * (rng() % 65), rng);
    for (CipherMode mode : {CipherMode::kCbc, CipherMode::kOfb}) {
      const auto ciphertext = encrypt(message, key_span(key), iv, mode);
      CHECK(ciphertext.size() == message.size());
      CHECK(decrypt(ciphertext, key_span(key), iv, mode) == message);
    }
  }
}

TEST_CASE("a couple of large roundtrips") {
  std::mt19937_64 rng(0xB16);
  const auto key = random_bytes(16, rng);
  Block iv;
  for (auto &b : iv) b = static_cast<std::uint8_t>(rng());
  const auto message = random_bytes(16 * 1024, rng);
  for (CipherMode mode : {CipherMode::kCbc, CipherMode::kOfb}) {
    CHECK(decrypt(encrypt(message, key_span(key), iv, mode), key_span(key), iv, mode) ==
          message);
  }
}

TEST_CASE("ofb is an involution under the same keystream") {
  std::mt19937_64 rng(0x0FB);
  const auto key = random_bytes(16, rng);
  Block iv;
  for (auto &b : iv) b = static_cast<std::uint8_t>(rng());
  const auto message = random_bytes(16 * 100, rng);
  const auto once = encrypt(message, key_span(key), iv, CipherMode::kOfb);
  const auto twice = encrypt(once, key_span(key), iv, CipherMode::kOfb);
  CHECK(twice == message);
}

TEST_CASE("empty input, alignment errors") {
  std::mt19937_64 rng(0xE44);
  const auto key = random_bytes(16, rng);
  Block iv{};
  for (CipherMode mode : {CipherMode::kCbc, CipherMode::kOfb}) {
    CHECK(encrypt({}, key_span(key), iv, mode).empty());
    CHECK(decrypt({}, key_span(key), iv, mode).empty());
    const auto short_message = random_bytes(15, rng);
    CHECK_THROWS_AS((void)encrypt(short_message, key_span(key), iv, mode), Error);
    CHECK_THROWS_AS((void)decrypt(short_message, key_span(key), iv, mode), Error);
  }
}

TEST_CASE("wrong key does not decrypt") {
  std::mt19937_64 rng(0xBAD);
  for (int i = 0; i < 20; ++i) {
    const auto key = random_bytes(16, rng);
    auto wrong = key;
    wrong[i % 16] ^= 0x40;
    Block iv;
    for (auto &b : iv) b = static_cast<std::uint8_t>(rng());
    const auto message = random_bytes(256, rng);
    for (CipherMode mode : {CipherMode::kCbc, CipherMode::kOfb}) {
      const auto ciphertext = encrypt(message, key_span(key), iv, mode);
      CHECK(decrypt(ciphertext, key_span(wrong), iv, mode) != message);
    }
  }
}

TEST_CASE("cbc hides patterns: constant plaintext yields no repeated neighbours") {
  std::mt19937_64 rng(0xECB);
  const auto key = random_bytes(16, rng);
  Block iv;
  for (auto &b : iv) b = static_cast<std::uint8_t>(rng());
  const std::vector<std::uint8_t> constant(1 << 20, 0xA7);
  const auto ciphertext = encrypt(constant, key_span(key), iv, CipherMode::kCbc);
  REQUIRE(ciphertext.size() == constant.size());
  for (std::size_t off = 16; off < ciphertext.size(); off += 16) {
    REQUIRE(std::memcmp(ciphertext.data() + off - 16, ciphertext.data() + off, 16) != 0);
  }
}

TEST_CASE("different ivs decorrelate nearly every block") {
  std::mt19937_64 rng(0x11F);
  const auto key = random_bytes(16, rng);
  const auto message = random_bytes(16 * 4096, rng);
  Block iv1, iv2;
  for (auto &b : iv1) b = static_cast<std::uint8_t>(rng());
  for (auto &b : iv2) b = static_cast<std::uint8_t>(rng());
  REQUIRE(iv1 != iv2);
  for (CipherMode mode : {CipherMode::kCbc, CipherMode::kOfb}) {
    const auto c1 = encrypt(message, key_span(key), iv1, mode);
    const auto c2 = encrypt(message, key_span(key), iv2, mode);
    std::size_t differing = 0;
    for (std::size_t off = 0; off < c1.size(); off += 16) {
      if (std::memcmp(c1.data() + off, c2.data() + off, 16) != 0) ++differing;
    }
    CHECK(differing >= (c1.size() / 16) * 99 / 100);
  }
}

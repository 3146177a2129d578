#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "errors.hpp"
#include "gf64.hpp"
#include "prime_field.hpp"
#include "support/oracles.hpp"

using imgshare::Fp31;
using imgshare::Gf64;
using imgshare::oracles::schoolbook_gf64_mul;

namespace {
constexpr std::uint64_t kSeed = 0x67F64;
}

TEST_CASE("the packed modulus constant matches the polynomial's exponent list") {
  CHECK(Gf64::kModulusLow == imgshare::oracles::oracle_modulus_low());
  CHECK(Gf64::kModulusLow == 0x247F43CB7ULL);
  CHECK(std::size(imgshare::oracles::kFieldPolynomialExponents) == 21);
}

TEST_CASE("addition is xor and the field has characteristic 2") {
  std::mt19937_64 rng(kSeed);
  CHECK((Gf64{0x3} + Gf64{0x5}) == Gf64{0x6});
  for (int i = 0; i < 1000; ++i) {
    Gf64 a{rng()};
    CHECK((Gf64::zero() + a) == a);
    CHECK((a + a) == Gf64::zero());
    CHECK((a - a) == Gf64::zero());
  }
}

TEST_CASE("multiplication basics") {
  CHECK((Gf64{0x2} * Gf64{0x2}) == Gf64{0x4});
  std::mt19937_64 rng(kSeed + 1);
  for (int i = 0; i < 1000; ++i) {
    Gf64 a{rng()};
    CHECK((a * Gf64::one()) == a);
    CHECK((a * Gf64::zero()) == Gf64::zero());
  }
  // One product pinned against an out-of-process computation.
  CHECK((Gf64{0x1c80317fa3b1799dULL} * Gf64{0xbdd640fb06671ad1ULL}) ==
        Gf64{0x7fcfee6f2fe0d135ULL});
}

TEST_CASE("multiplication matches the schoolbook oracle") {
  std::mt19937_64 rng(kSeed + 2);
  for (int i = 0; i < 10000; ++i) {
    std::uint64_t a = rng(), b = rng();
    CHECK((Gf64{a} * Gf64{b}).bits() == schoolbook_gf64_mul(a, b));
  }
}

TEST_CASE("field axioms hold on random triples") {
  std::mt19937_64 rng(kSeed + 3);
  for (int i = 0; i < 10000; ++i) {
    Gf64 a{rng()}, b{rng()}, c{rng()};
    CHECK((a + b) == (b + a));
    CHECK((a * b) == (b * a));
    CHECK(((a + b) + c) == (a + (b + c)));
    CHECK(((a * b) * c) == (a * (b * c)));
    CHECK((a * (b + c)) == (a * b + a * c));
  }
}

TEST_CASE("inverse") {
  CHECK(Gf64::one().inverse() == Gf64::one());
  CHECK_THROWS_AS((void)Gf64::zero().inverse(), imgshare::Error);
  CHECK((Gf64{0x0123456789abcdefULL}.inverse()) == Gf64{0x5919b0eb78683b87ULL});

  std::mt19937_64 rng(kSeed + 4);
  for (int i = 0; i < 10000; ++i) {
    Gf64 a{rng()};
    if (a.is_zero()) continue;
    CHECK((a * a.inverse()) == Gf64::one());
    CHECK(a.inverse().inverse() == a);
  }
}

TEST_CASE("pow") {
  std::mt19937_64 rng(kSeed + 5);
  for (int i = 0; i < 100; ++i) {
    Gf64 a{rng()};
    CHECK(a.pow(0) == Gf64::one());
    CHECK(a.pow(1) == a);
    CHECK(a.pow(5) == a * a * a * a * a);
    if (!a.is_zero()) {
      // Multiplicative group order 2^64 - 1.
      CHECK(a.pow(~std::uint64_t{0}) == Gf64::one());
    }
  }
  // X^64 reduces to the low part of the field polynomial.
  CHECK(Gf64{0x2}.pow(64) == Gf64{Gf64::kModulusLow});
}

TEST_CASE("frobenius: squaring 64 times is the identity") {
  std::mt19937_64 rng(kSeed + 6);
  for (int i = 0; i < 100; ++i) {
    Gf64 a{rng()};
    Gf64 x = a;
    for (int j = 0; j < 64; ++j) x = x.squared();
    CHECK(x == a);
  }
}

TEST_CASE("big-endian serialization") {
  Gf64 a{0x0102030405060708ULL};
  const auto bytes = a.to_bytes();
  CHECK(bytes[0] == 0x01);
  CHECK(bytes[7] == 0x08);
  CHECK(Gf64::from_bytes(bytes) == a);

  std::mt19937_64 rng(kSeed + 7);
  for (int i = 0; i < 1000; ++i) {
    Gf64 x{rng()};
    CHECK(Gf64::from_bytes(x.to_bytes()) == x);
  }
}

TEST_CASE("prime field mirrors integer arithmetic below the modulus") {
  CHECK((Fp31{1234} + Fp31{166}).value() == 1400);
  CHECK((Fp31{166} * Fp31{3}).value() == 498);
  CHECK((Fp31{5} - Fp31{11}).value() == Fp31::kModulus - 6);
  CHECK_THROWS_AS((void)Fp31::zero().inverse(), imgshare::Error);

  std::mt19937_64 rng(kSeed + 8);
  for (int i = 0; i < 1000; ++i) {
    Fp31 a{rng()};
    if (a.is_zero()) continue;
    CHECK((a * a.inverse()) == Fp31::one());
  }
}

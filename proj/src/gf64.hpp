#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace imgshare {

// Element of GF(2^64). The 64-bit value is a binary polynomial of degree
// below 64, bit k being the coefficient of X^k. Every 64-bit value is a
// valid canonical element.
//
// The field is defined by the degree-64 Conway polynomial
//   P(X) = X^64 + X^33 + X^30 + X^26 + X^25 + X^24 + X^23 + X^22 + X^21
//        + X^20 + X^18 + X^13 + X^12 + X^11 + X^10 + X^7 + X^5 + X^4
//        + X^2 + X + 1.
class Gf64 {
 public:
  // Low 64 bits of P(X); the X^64 term is implicit. Equivalently the
  // residue of X^64 modulo P.
  static constexpr std::uint64_t kModulusLow = 0x247F43CB7ULL;

  constexpr Gf64() = default;
  constexpr explicit Gf64(std::uint64_t bits) : bits_(bits) {}

  static constexpr Gf64 zero() { return Gf64{0}; }
  static constexpr Gf64 one() { return Gf64{1}; }
  static constexpr Gf64 from_u64(std::uint64_t v) { return Gf64{v}; }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool is_zero() const { return bits_ == 0; }

  // Addition is bitwise XOR; the field has characteristic 2, so
  // subtraction is the same operation.
  friend constexpr Gf64 operator+(Gf64 a, Gf64 b) { return Gf64{a.bits_ ^ b.bits_}; }
  friend constexpr Gf64 operator-(Gf64 a, Gf64 b) { return a + b; }
  constexpr Gf64 &operator+=(Gf64 o) {
    bits_ ^= o.bits_;
    return *this;
  }

  // Carry-less polynomial product reduced modulo P(X).
  friend Gf64 operator*(Gf64 a, Gf64 b);
  Gf64 &operator*=(Gf64 o) {
    *this = *this * o;
    return *this;
  }

  Gf64 squared() const { return *this * *this; }

  // Repeated product; pow(0) is one.
  Gf64 pow(std::uint64_t exponent) const;

  // Multiplicative inverse via a^(2^64 - 2). Throws on zero.
  Gf64 inverse() const;

  friend constexpr bool operator==(Gf64, Gf64) = default;

  // Canonical serialization: 8 bytes, big-endian.
  std::array<std::uint8_t, 8> to_bytes() const;
  static Gf64 from_bytes(std::span<const std::uint8_t, 8> bytes);

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace imgshare

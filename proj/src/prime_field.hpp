#pragma once

#include <cstdint>

#include "errors.hpp"

namespace imgshare {

// Integers modulo the Mersenne prime 2^31 - 1. The secret-sharing code is
// generic over the field type; this one exists so its behaviour can be
// checked against small worked integer examples, where all values stay
// below the modulus and arithmetic agrees with plain integers.
class Fp31 {
 public:
  static constexpr std::uint32_t kModulus = 2147483647u;  // 2^31 - 1

  constexpr Fp31() = default;
  constexpr explicit Fp31(std::uint64_t v) : value_(static_cast<std::uint32_t>(v % kModulus)) {}

  static constexpr Fp31 zero() { return Fp31{}; }
  static constexpr Fp31 one() { return Fp31{1}; }
  static constexpr Fp31 from_u64(std::uint64_t v) { return Fp31{v}; }

  constexpr std::uint32_t value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }

  friend constexpr Fp31 operator+(Fp31 a, Fp31 b) {
    return Fp31{static_cast<std::uint64_t>(a.value_) + b.value_};
  }
  friend constexpr Fp31 operator-(Fp31 a, Fp31 b) {
    return Fp31{static_cast<std::uint64_t>(a.value_) + kModulus - b.value_};
  }
  friend constexpr Fp31 operator*(Fp31 a, Fp31 b) {
    return Fp31{static_cast<std::uint64_t>(a.value_) * b.value_};
  }
  constexpr Fp31 &operator+=(Fp31 o) { return *this = *this + o; }
  constexpr Fp31 &operator*=(Fp31 o) { return *this = *this * o; }

  constexpr Fp31 pow(std::uint64_t exponent) const {
    Fp31 result = one();
    Fp31 base = *this;
    while (exponent != 0) {
      if (exponent & 1) result *= base;
      base *= base;
      exponent >>= 1;
    }
    return result;
  }

  Fp31 inverse() const {
    if (is_zero()) {
      raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "division by zero in field");
    }
    return pow(kModulus - 2);
  }

  friend constexpr bool operator==(Fp31, Fp31) = default;

 private:
  std::uint32_t value_ = 0;
};

}  // namespace imgshare

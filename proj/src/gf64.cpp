#include "gf64.hpp"

#include "errors.hpp"

#if defined(__x86_64__) && defined(__GNUC__)
#include <immintrin.h>
#define IMGSHARE_GF64_X86 1
#endif

namespace imgshare {

namespace {

using ClmulFn = void (*)(std::uint64_t, std::uint64_t, std::uint64_t &, std::uint64_t &);

// Windowed carry-less multiply: 4-bit nibbles of b against a table of the
// sixteen carry-less multiples of a. deg(a*u) <= 63 + 3, so the table fits
// in 128 bits with no spill.
void clmul_soft(std::uint64_t a, std::uint64_t b, std::uint64_t &hi, std::uint64_t &lo) {
  unsigned __int128 table[16];
  table[0] = 0;
  table[1] = a;
  for (int i = 2; i < 16; i += 2) {
    table[i] = table[i / 2] << 1;
    table[i + 1] = table[i] ^ a;
  }
  unsigned __int128 acc = 0;
  for (int shift = 60; shift >= 0; shift -= 4) {
    acc = (acc << 4) ^ table[(b >> shift) & 0xF];
  }
  hi = static_cast<std::uint64_t>(acc >> 64);
  lo = static_cast<std::uint64_t>(acc);
}

#ifdef IMGSHARE_GF64_X86
__attribute__((target("pclmul,sse2"))) void clmul_hw(std::uint64_t a, std::uint64_t b,
                                                     std::uint64_t &hi, std::uint64_t &lo) {
  __m128i x = _mm_set_epi64x(0, static_cast<long long>(a));
  __m128i y = _mm_set_epi64x(0, static_cast<long long>(b));
  __m128i r = _mm_clmulepi64_si128(x, y, 0x00);
  lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
  hi = static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_srli_si128(r, 8)));
}
#endif

ClmulFn pick_clmul() {
#ifdef IMGSHARE_GF64_X86
  if (__builtin_cpu_supports("pclmul")) return clmul_hw;
#endif
  return clmul_soft;
}

const ClmulFn clmul64 = pick_clmul();

// Reduce a 128-bit polynomial modulo P using X^64 = kModulusLow (degree 33).
// Each fold multiplies the overflow by the residue; three folds flatten the
// result to 64 bits (97 -> 66 -> 35 bits).
std::uint64_t reduce128(std::uint64_t hi, std::uint64_t lo) {
  std::uint64_t h1, l1, h2, l2, h3, l3;
  clmul64(hi, Gf64::kModulusLow, h1, l1);
  clmul64(h1, Gf64::kModulusLow, h2, l2);
  clmul64(h2, Gf64::kModulusLow, h3, l3);
  return lo ^ l1 ^ l2 ^ l3;
}

}  // namespace

Gf64 operator*(Gf64 a, Gf64 b) {
  std::uint64_t hi, lo;
  clmul64(a.bits(), b.bits(), hi, lo);
  return Gf64{reduce128(hi, lo)};
}

Gf64 Gf64::pow(std::uint64_t exponent) const {
  Gf64 result = one();
  Gf64 base = *this;
  while (exponent != 0) {
    if (exponent & 1) result *= base;
    base = base.squared();
    exponent >>= 1;
  }
  return result;
}

Gf64 Gf64::inverse() const {
  if (is_zero()) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "division by zero in field");
  }
  // a^(2^64 - 2) by square-and-multiply.
  return pow(~std::uint64_t{0} - 1);
}

std::array<std::uint8_t, 8> Gf64::to_bytes() const {
  std::array<std::uint8_t, 8> out;
  for (int i = 0; i < 8; ++i) {
    out[i] = static_cast<std::uint8_t>(bits_ >> (56 - 8 * i));
  }
  return out;
}

Gf64 Gf64::from_bytes(std::span<const std::uint8_t, 8> bytes) {
  std::uint64_t v = 0;
  for (std::uint8_t b : bytes) v = (v << 8) | b;
  return Gf64{v};
}

}  // namespace imgshare

#include "entropy.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>

#include "errors.hpp"

namespace imgshare {

std::uint64_t EntropySource::next_u64() {
  std::uint8_t buf[8];
  fill(buf);
  std::uint64_t v = 0;
  for (std::uint8_t b : buf) v = (v << 8) | b;
  return v;
}

void SystemEntropy::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  std::FILE *f = std::fopen("/dev/urandom", "rb");
  if (f == nullptr) {
    raise(IMGSHARE_ERROR_ENTROPY,
          std::string("cannot open /dev/urandom: ") + std::strerror(errno));
  }
  std::size_t got = std::fread(out.data(), 1, out.size(), f);
  std::fclose(f);
  if (got != out.size()) {
    raise(IMGSHARE_ERROR_ENTROPY, "short read from /dev/urandom");
  }
}

std::uint64_t SeededEntropy::next_block() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void SeededEntropy::fill(std::span<std::uint8_t> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    std::uint64_t block = next_block();
    for (int shift = 56; shift >= 0 && i < out.size(); shift -= 8) {
      out[i++] = static_cast<std::uint8_t>(block >> shift);
    }
  }
}

}  // namespace imgshare

#pragma once

#include <cstdint>
#include <span>

namespace imgshare {

// Byte-stream entropy source. Sharing sessions take one of these so tests
// can inject deterministic streams; production code uses SystemEntropy.
class EntropySource {
 public:
  virtual ~EntropySource() = default;

  virtual void fill(std::span<std::uint8_t> out) = 0;

  // Next 8 bytes interpreted big-endian.
  std::uint64_t next_u64();
};

// Reads the operating system's cryptographic generator.
class SystemEntropy final : public EntropySource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

// Deterministic splitmix64 keystream. Reproducible fixtures only; not a
// cryptographic source.
class SeededEntropy final : public EntropySource {
 public:
  explicit SeededEntropy(std::uint64_t seed) : state_(seed) {}

  void fill(std::span<std::uint8_t> out) override;

 private:
  std::uint64_t next_block();

  std::uint64_t state_;
};

}  // namespace imgshare

#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace imgshare {

// AES-128 block cipher (FIPS 197): 128-bit blocks, 128-bit keys, 10 rounds.
// Conformance is pinned by known-answer vectors in the test suite.
class Aes128 {
 public:
  static constexpr std::size_t kBlockSize = 16;
  static constexpr std::size_t kKeySize = 16;

  explicit Aes128(std::span<const std::uint8_t, kKeySize> key);

  void encrypt_block(const std::uint8_t in[kBlockSize], std::uint8_t out[kBlockSize]) const;
  void decrypt_block(const std::uint8_t in[kBlockSize], std::uint8_t out[kBlockSize]) const;

 private:
  // Round keys as bytes: 11 round keys of 16 bytes.
  std::array<std::uint8_t, 176> round_keys_;
};

}  // namespace imgshare

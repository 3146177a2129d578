#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace imgshare {

// SHA-256 (FIPS 180-4). Used for IV derivation and image checksums.
class Sha256 {
 public:
  static constexpr std::size_t kDigestSize = 32;

  Sha256();

  Sha256 &update(std::span<const std::uint8_t> data);
  std::array<std::uint8_t, kDigestSize> finish();

  static std::array<std::uint8_t, kDigestSize> digest(std::span<const std::uint8_t> data);

 private:
  void process_block(const std::uint8_t *block);

  std::array<std::uint32_t, 8> state_;
  std::uint64_t total_bytes_ = 0;
  std::array<std::uint8_t, 64> buffer_{};
  std::size_t buffered_ = 0;
};

}  // namespace imgshare

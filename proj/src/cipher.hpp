#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gf64.hpp"

namespace imgshare {

enum class CipherMode { kCbc, kOfb };
enum class IvDerivation { kSha, kConcat };

std::string to_string(CipherMode mode);
std::string to_string(IvDerivation derivation);
CipherMode cipher_mode_from_string(const std::string &s);
IvDerivation iv_derivation_from_string(const std::string &s);

using Block = std::array<std::uint8_t, 16>;

// Per-participant IV from the Shamir identifier (8 bytes, big-endian):
// "sha" takes the first 128 bits of SHA-256 of those bytes, "concat"
// repeats them twice.
Block derive_iv(Gf64 identifier, IvDerivation derivation);

// AES-128 in CBC or OFB mode, no padding: the ciphertext has exactly the
// plaintext's length, so a share keeps the original resolution. The input
// must already be block-aligned.
std::vector<std::uint8_t> encrypt(std::span<const std::uint8_t> plaintext,
                                  std::span<const std::uint8_t, 16> key, const Block &iv,
                                  CipherMode mode);

std::vector<std::uint8_t> decrypt(std::span<const std::uint8_t> ciphertext,
                                  std::span<const std::uint8_t, 16> key, const Block &iv,
                                  CipherMode mode);

}  // namespace imgshare

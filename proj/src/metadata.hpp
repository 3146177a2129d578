#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "cipher.hpp"
#include "gf64.hpp"

namespace imgshare {

// Sidecar contents accompanying one share image. Session-level fields are
// duplicated in every sidecar so any t participants can reconstruct
// without a separate coordination file; only the identifier differs.
struct SidecarMetadata {
  static constexpr std::uint32_t kCurrentVersion = 1;

  std::uint32_t version = kCurrentVersion;
  Gf64 identifier;
  std::uint32_t t = 0;
  std::uint32_t n = 0;
  std::uint32_t key_bits = 128;
  CipherMode mode = CipherMode::kCbc;
  IvDerivation iv_derivation = IvDerivation::kSha;
  std::uint64_t key_position = 0;
  std::uint32_t original_width = 0;
  std::uint32_t original_height = 0;
  std::uint32_t pad_right = 0;
  std::uint32_t pad_bottom = 0;
  // SHA-256 of the original image's pixel bytes, checked after
  // reconstruction. Not a secrecy mechanism.
  std::array<std::uint8_t, 32> checksum{};

  friend bool operator==(const SidecarMetadata &, const SidecarMetadata &) = default;
};

// True when two sidecars belong to the same sharing session, i.e. agree on
// everything except the identifier.
bool same_session(const SidecarMetadata &a, const SidecarMetadata &b);

// Line-based "key = value" text, UTF-8, one field per line.
std::string serialize_metadata(const SidecarMetadata &meta);

// Strict parser: unknown keys, duplicates, missing fields and malformed
// values are all rejected.
SidecarMetadata parse_metadata(std::string_view text);

std::string identifier_hex(Gf64 identifier);

}  // namespace imgshare

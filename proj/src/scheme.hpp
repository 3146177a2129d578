#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cipher.hpp"
#include "entropy.hpp"
#include "image.hpp"
#include "imagecodec.hpp"
#include "metadata.hpp"

namespace imgshare {

// Parameters of one sharing session. The key is always M = 128 bits,
// split into ell = 2 chunks of 64 bits, one Shamir instance per chunk.
struct SchemeParams {
  static constexpr std::uint32_t kKeyBits = 128;
  static constexpr std::uint32_t kKeyBytes = kKeyBits / 8;
  static constexpr std::uint32_t kKeyChunks = 2;

  std::uint32_t t = 0;
  std::uint32_t n = 0;
  CipherMode mode = CipherMode::kCbc;
  IvDerivation iv_derivation = IvDerivation::kSha;
  // Bit offset into the padded bitstream from which the key bits are
  // taken; byte-aligned, session-wide, recorded in every sidecar.
  std::uint64_t key_position = 0;
  // Worker threads for per-participant assembly.
  std::uint32_t jobs = 1;
};

// One participant's output: the share image C^i (same dimensions as the
// padded original; its first 128 bits are the two Shamir share values,
// 8 bytes each, big-endian) plus the sidecar.
struct ShareBundle {
  SidecarMetadata metadata;
  ImagePayload share_image;
};

std::vector<ShareBundle> generate_shares(const ImagePayload &image, const SchemeParams &params,
                                         EntropySource &entropy);

// Reconstructs the original image bit-exactly from at least t bundles of
// one session. Bundles beyond the first t are cross-checked against the
// interpolated polynomials; disagreements are reported through `warnings`
// when provided.
ImagePayload reconstruct(std::span<const ShareBundle> bundles,
                         std::vector<std::string> *warnings = nullptr);

// Human-readable session summary. Never includes reconstructed content or
// key material.
std::string inspect(const SidecarMetadata &meta);

void write_bundle(const ShareBundle &bundle, const std::filesystem::path &image_path,
                  const std::filesystem::path &meta_path, ImageFormat format);

ShareBundle read_bundle(const std::filesystem::path &image_path,
                        const std::filesystem::path &meta_path);

}  // namespace imgshare

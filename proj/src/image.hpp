#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "entropy.hpp"

namespace imgshare {

// Decoded 8-bit RGB image: row-major triples, one byte per channel.
// The derived bitstream B has N = 24 * width * height bits.
struct ImagePayload {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;  // 3 * width * height bytes

  std::size_t byte_count() const { return pixels.size(); }
  std::size_t bit_count() const { return pixels.size() * 8; }

  friend bool operator==(const ImagePayload &, const ImagePayload &) = default;
};

// Checks pixels.size() == 3 * width * height and nonzero dimensions.
ImagePayload make_payload(std::uint32_t width, std::uint32_t height,
                          std::vector<std::uint8_t> pixels);

// Margins added to make both dimensions multiples of 4. Zero when the
// image was already aligned.
struct PaddingRecord {
  std::uint32_t pad_right = 0;
  std::uint32_t pad_bottom = 0;
  std::uint32_t original_width = 0;
  std::uint32_t original_height = 0;

  bool is_zero() const { return pad_right == 0 && pad_bottom == 0; }

  friend bool operator==(const PaddingRecord &, const PaddingRecord &) = default;
};

// Flat bit array over packed bytes, MSB-first: bit k of the stream is bit
// (7 - k%8) of byte k/8.
class BitArray {
 public:
  BitArray() = default;
  explicit BitArray(std::vector<std::uint8_t> bytes)
      : bytes_(std::move(bytes)), bit_count_(bytes_.size() * 8) {}

  std::size_t size() const { return bit_count_; }
  bool bit(std::size_t k) const { return (bytes_[k / 8] >> (7 - k % 8)) & 1; }

  std::span<const std::uint8_t> bytes() const { return bytes_; }
  std::vector<std::uint8_t> take_bytes() && { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bit_count_ = 0;
};

// The pixel byte stream viewed as the flat bit array B.
BitArray bits_of(const ImagePayload &payload);

// Inverse of bits_of; the bit count must equal 24 * width * height.
ImagePayload payload_of(const BitArray &bits, std::uint32_t width, std::uint32_t height);

// Grows the image to the next multiples of 4 in both dimensions, filling
// the new right and bottom margins with random pixels. The original image
// occupies the top-left region. Already-aligned images pass through
// unchanged with a zero record.
std::pair<ImagePayload, PaddingRecord> pad_to_alignment(const ImagePayload &payload,
                                                        EntropySource &entropy);

// Restores the original-dimension image from a padded one.
ImagePayload crop_padding(const ImagePayload &payload, const PaddingRecord &record);

}  // namespace imgshare

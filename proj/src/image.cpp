#include "image.hpp"

#include <cstring>

#include "errors.hpp"

namespace imgshare {

ImagePayload make_payload(std::uint32_t width, std::uint32_t height,
                          std::vector<std::uint8_t> pixels) {
  if (width == 0 || height == 0) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "image dimensions must be nonzero");
  }
  // Keeps 3*w*h comfortably inside 64 bits and allocations sane.
  constexpr std::uint32_t kMaxDimension = 1u << 20;
  if (width > kMaxDimension || height > kMaxDimension) {
    raise(IMGSHARE_ERROR_UNSUPPORTED, "image dimensions exceed " +
                                          std::to_string(kMaxDimension) + " pixels");
  }
  const std::size_t expected = std::size_t{3} * width * height;
  if (pixels.size() != expected) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT,
          "pixel buffer holds " + std::to_string(pixels.size()) + " bytes, expected " +
              std::to_string(expected) + " for " + std::to_string(width) + "x" +
              std::to_string(height));
  }
  return ImagePayload{width, height, std::move(pixels)};
}

BitArray bits_of(const ImagePayload &payload) { return BitArray{payload.pixels}; }

ImagePayload payload_of(const BitArray &bits, std::uint32_t width, std::uint32_t height) {
  if (bits.size() != std::size_t{24} * width * height) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT,
          "bit array of " + std::to_string(bits.size()) + " bits does not match " +
              std::to_string(width) + "x" + std::to_string(height));
  }
  const auto view = bits.bytes();
  return make_payload(width, height, std::vector<std::uint8_t>(view.begin(), view.end()));
}

namespace {

constexpr std::uint32_t round_up4(std::uint32_t v) { return (v + 3u) & ~3u; }

}  // namespace

std::pair<ImagePayload, PaddingRecord> pad_to_alignment(const ImagePayload &payload,
                                                        EntropySource &entropy) {
  const std::uint32_t w = payload.width;
  const std::uint32_t h = payload.height;
  PaddingRecord record{round_up4(w) - w, round_up4(h) - h, w, h};
  if (record.is_zero()) {
    return {payload, record};
  }

  const std::uint32_t pw = w + record.pad_right;
  const std::uint32_t ph = h + record.pad_bottom;
  const std::size_t pad_bytes =
      std::size_t{3} * (std::size_t{pw} * ph - std::size_t{w} * h);
  std::vector<std::uint8_t> margin(pad_bytes);
  entropy.fill(margin);

  std::vector<std::uint8_t> out(std::size_t{3} * pw * ph);
  std::size_t margin_pos = 0;
  const std::size_t src_row = std::size_t{3} * w;
  const std::size_t dst_row = std::size_t{3} * pw;
  for (std::uint32_t r = 0; r < h; ++r) {
    std::memcpy(out.data() + r * dst_row, payload.pixels.data() + r * src_row, src_row);
    std::memcpy(out.data() + r * dst_row + src_row, margin.data() + margin_pos,
                dst_row - src_row);
    margin_pos += dst_row - src_row;
  }
  if (record.pad_bottom > 0) {
    std::memcpy(out.data() + std::size_t{h} * dst_row, margin.data() + margin_pos,
                std::size_t{record.pad_bottom} * dst_row);
  }
  return {make_payload(pw, ph, std::move(out)), record};
}

ImagePayload crop_padding(const ImagePayload &payload, const PaddingRecord &record) {
  if (record.original_width + record.pad_right != payload.width ||
      record.original_height + record.pad_bottom != payload.height) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT,
          "padding record does not match image dimensions");
  }
  if (record.is_zero()) return payload;

  const std::size_t src_row = std::size_t{3} * payload.width;
  const std::size_t dst_row = std::size_t{3} * record.original_width;
  std::vector<std::uint8_t> out(dst_row * record.original_height);
  for (std::uint32_t r = 0; r < record.original_height; ++r) {
    std::memcpy(out.data() + r * dst_row, payload.pixels.data() + r * src_row, dst_row);
  }
  return make_payload(record.original_width, record.original_height, std::move(out));
}

}  // namespace imgshare

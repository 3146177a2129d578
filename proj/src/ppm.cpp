#include <cctype>
#include <fstream>
#include <limits>

#include "errors.hpp"
#include "imagecodec.hpp"

namespace imgshare {

std::string to_string(ImageFormat format) { return format == ImageFormat::kPpm ? "ppm" : "png"; }

ImageFormat image_format_from_string(const std::string &s) {
  if (s == "ppm") return ImageFormat::kPpm;
  if (s == "png") return ImageFormat::kPng;
  raise(IMGSHARE_ERROR_INVALID_ARGUMENT,
        "unknown image format '" + s + "' (expected ppm or png)");
}

std::string file_extension(ImageFormat format) { return "." + to_string(format); }

namespace {

constexpr std::size_t kMaxPixelBytes = std::size_t{1} << 31;

[[noreturn]] void parse_fail(std::size_t offset, const std::string &what) {
  raise(IMGSHARE_ERROR_PARSE, "ppm parse error at byte " + std::to_string(offset) + ": " + what);
}

// Netpbm header tokens are separated by whitespace; a '#' starts a comment
// that runs to end of line.
class HeaderScanner {
 public:
  explicit HeaderScanner(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t offset() const { return pos_; }

  void skip_separators() {
    while (pos_ < data_.size()) {
      if (std::isspace(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        return;
      }
    }
  }

  std::uint64_t next_number(const char *what) {
    skip_separators();
    if (pos_ >= data_.size()) parse_fail(pos_, std::string("missing ") + what);
    if (!std::isdigit(data_[pos_])) {
      parse_fail(pos_, std::string("expected digit for ") + what);
    }
    std::uint64_t value = 0;
    while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
      value = value * 10 + (data_[pos_] - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) {
        parse_fail(pos_, std::string(what) + " out of range");
      }
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates the maxval from the raster.
  void expect_single_whitespace() {
    if (pos_ >= data_.size() || !std::isspace(data_[pos_])) {
      parse_fail(pos_, "expected whitespace before raster data");
    }
    ++pos_;
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace

ImagePayload decode_ppm(std::span<const std::uint8_t> data) {
  if (data.size() < 2) parse_fail(0, "truncated magic");
  if (data[0] != 'P') parse_fail(0, "not a Netpbm file");
  if (data[1] == '3') {
    raise(IMGSHARE_ERROR_UNSUPPORTED, "ASCII (P3) PPM is not supported; use binary P6");
  }
  if (data[1] != '6') {
    raise(IMGSHARE_ERROR_UNSUPPORTED,
          std::string("unsupported Netpbm variant P") + static_cast<char>(data[1]) +
              "; only P6 is supported");
  }

  HeaderScanner scanner(data.subspan(2));
  const std::uint64_t width = scanner.next_number("width");
  const std::uint64_t height = scanner.next_number("height");
  const std::uint64_t maxval = scanner.next_number("maxval");
  if (maxval != 255) {
    raise(IMGSHARE_ERROR_UNSUPPORTED,
          "unsupported channel depth: maxval " + std::to_string(maxval) + " (expected 255)");
  }
  if (width == 0 || height == 0) parse_fail(2 + scanner.offset(), "zero dimension");
  if (width > (1u << 20) || height > (1u << 20)) {
    raise(IMGSHARE_ERROR_UNSUPPORTED, "image too large");
  }
  scanner.expect_single_whitespace();

  const std::size_t raster_start = 2 + scanner.offset();
  const std::uint64_t raster_bytes = 3 * width * height;
  if (raster_bytes > kMaxPixelBytes) {
    raise(IMGSHARE_ERROR_UNSUPPORTED, "image too large");
  }
  if (data.size() - raster_start < raster_bytes) {
    parse_fail(data.size(), "raster truncated: expected " + std::to_string(raster_bytes) +
                                " bytes from offset " + std::to_string(raster_start));
  }
  std::vector<std::uint8_t> pixels(data.begin() + raster_start,
                                   data.begin() + raster_start + raster_bytes);
  return make_payload(static_cast<std::uint32_t>(width), static_cast<std::uint32_t>(height),
                      std::move(pixels));
}

std::vector<std::uint8_t> encode_ppm(const ImagePayload &payload) {
  std::string header = "P6\n" + std::to_string(payload.width) + " " +
                       std::to_string(payload.height) + "\n255\n";
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + payload.pixels.size());
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), payload.pixels.begin(), payload.pixels.end());
  return out;
}

ImagePayload decode_image(std::span<const std::uint8_t> data) {
  static const std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (data.size() >= 8 && std::equal(kPngSignature, kPngSignature + 8, data.begin())) {
    return decode_png(data);
  }
  if (!data.empty() && data[0] == 'P') {
    return decode_ppm(data);
  }
  raise(IMGSHARE_ERROR_PARSE, "unrecognized image data: neither PNG nor PPM");
}

std::vector<std::uint8_t> encode_image(const ImagePayload &payload, ImageFormat format) {
  return format == ImageFormat::kPpm ? encode_ppm(payload) : encode_png(payload);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(IMGSHARE_ERROR_IO, "cannot open " + path.string() + " for reading");
  }
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) {
    raise(IMGSHARE_ERROR_IO, "read failed for " + path.string());
  }
  return data;
}

void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    raise(IMGSHARE_ERROR_IO, "cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char *>(data.data()),
            static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) {
    raise(IMGSHARE_ERROR_IO, "write failed for " + path.string());
  }
}

ImagePayload read_image(const std::filesystem::path &path) {
  try {
    return decode_image(read_file(path));
  } catch (const Error &e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_image(const ImagePayload &payload, const std::filesystem::path &path,
                 ImageFormat format) {
  write_file(path, encode_image(payload, format));
}

}  // namespace imgshare

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <png.h>

#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "image.hpp"
#include "imagecodec.hpp"
#include "support/oracles.hpp"

using namespace imgshare;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string &s) {
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

ImagePayload random_image(std::uint32_t w, std::uint32_t h, std::mt19937_64 &rng) {
  std::vector<std::uint8_t> pixels(std::size_t{3} * w * h);
  for (auto &b : pixels) b = static_cast<std::uint8_t>(rng());
  return make_payload(w, h, std::move(pixels));
}

// Authors a PNG with arbitrary color type / bit depth, for exercising the
// reader's rejection paths and grayscale expansion.
std::vector<std::uint8_t> author_png(std::uint32_t w, std::uint32_t h, int color_type,
                                     int bit_depth, const std::vector<std::uint8_t> &samples) {
  std::vector<std::uint8_t> out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  REQUIRE(png != nullptr);
  png_infop info = png_create_info_struct(png);
  REQUIRE(info != nullptr);
  if (setjmp(png_jmpbuf(png)) != 0) {
    png_destroy_write_struct(&png, &info);
    FAIL("png author error");
    return {};
  }
  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t length) {
        auto *sink = static_cast<std::vector<std::uint8_t> *>(png_get_io_ptr(p));
        sink->insert(sink->end(), data, data + length);
      },
      [](png_structp) {});
  png_set_IHDR(png, info, w, h, bit_depth, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  if (color_type == PNG_COLOR_TYPE_PALETTE) {
    png_color palette[2] = {{0, 0, 0}, {255, 255, 255}};
    png_set_PLTE(png, info, palette, 2);
  }
  png_write_info(png, info);
  const std::size_t row_bytes = png_get_rowbytes(png, info);
  REQUIRE(samples.size() == row_bytes * h);
  std::vector<png_bytep> rows(h);
  for (std::uint32_t r = 0; r < h; ++r) {
    rows[r] = const_cast<png_bytep>(samples.data() + row_bytes * r);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace

TEST_CASE("ppm: minimal P6 file") {
  const std::string header = "P6\n2 2\n255\n";
  std::vector<std::uint8_t> data = bytes_of(header);
  const std::uint8_t raster[12] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  data.insert(data.end(), raster, raster + 12);

  const ImagePayload payload = decode_ppm(data);
  CHECK(payload.width == 2);
  CHECK(payload.height == 2);
  CHECK(std::memcmp(payload.pixels.data(), raster, 12) == 0);
}

TEST_CASE("ppm: header comments and flexible whitespace") {
  const std::string header = "P6\n# a comment line\n 2 # trailing\n#another\n2\t255\n";
  std::vector<std::uint8_t> data = bytes_of(header);
  data.resize(data.size() + 12, 0x5A);
  const ImagePayload payload = decode_ppm(data);
  CHECK(payload.width == 2);
  CHECK(payload.height == 2);
  CHECK(payload.pixels == std::vector<std::uint8_t>(12, 0x5A));
}

TEST_CASE("ppm: rejection paths") {
  CHECK_THROWS_WITH_AS((void)decode_ppm(bytes_of("P3\n2 2\n255\n")),
                       "ASCII (P3) PPM is not supported; use binary P6", Error);
  CHECK_THROWS_AS((void)decode_ppm(bytes_of("P5\n2 2\n255\n")), Error);
  CHECK_THROWS_AS((void)decode_ppm(bytes_of("P6\n2 2\n65535\n")), Error);
  CHECK_THROWS_AS((void)decode_ppm(bytes_of("P6\n2 2\n254\n")), Error);
  CHECK_THROWS_AS((void)decode_ppm(bytes_of("JUNK")), Error);
  // Hostile header dimensions are capped before any allocation.
  CHECK_THROWS_WITH_AS((void)decode_ppm(bytes_of("P6\n4294967295 4294967295\n255\n")),
                       "image too large", Error);

  // Truncated raster: the reported offset is where the data ended.
  std::vector<std::uint8_t> truncated = bytes_of("P6\n2 2\n255\n");
  truncated.resize(truncated.size() + 5, 0);
  try {
    (void)decode_ppm(truncated);
    FAIL("expected parse error");
  } catch (const Error &e) {
    CHECK(e.code() == IMGSHARE_ERROR_PARSE);
    CHECK(std::string(e.what()).find("byte 16") != std::string::npos);
    CHECK(std::string(e.what()).find("truncated") != std::string::npos);
  }
}

TEST_CASE("ppm: canonical writer round-trips byte-exactly") {
  std::mt19937_64 rng(0x99A);
  const ImagePayload payload = random_image(7, 5, rng);
  const auto encoded = encode_ppm(payload);
  CHECK(decode_ppm(encoded) == payload);
  // Canonical header, so encoding the decoded image reproduces the bytes.
  CHECK(encode_ppm(decode_ppm(encoded)) == encoded);
}

TEST_CASE("roundtrip corpus over both formats") {
  std::mt19937_64 rng(0xC05E);
  std::uniform_int_distribution<std::uint32_t> dim(1, 512);
  int checked = 0;
  while (checked < 100) {
    const std::uint32_t w = dim(rng), h = dim(rng);
    if (std::size_t{3} * w * h > (1u << 21)) continue;  // keep the corpus quick
    ++checked;
    const ImagePayload payload = random_image(w, h, rng);
    CHECK(decode_ppm(encode_ppm(payload)) == payload);
    CHECK(decode_png(encode_png(payload)) == payload);
  }
  // A few large ones at the corpus boundary.
  for (std::uint32_t w : {512u, 511u}) {
    const ImagePayload payload = random_image(w, 512, rng);
    CHECK(decode_ppm(encode_ppm(payload)) == payload);
    CHECK(decode_png(encode_png(payload)) == payload);
  }
}

TEST_CASE("png: grayscale is expanded to rgb") {
  const std::vector<std::uint8_t> gray = {0, 100, 200, 255, 30, 60};
  const auto data = author_png(3, 2, PNG_COLOR_TYPE_GRAY, 8, gray);
  const ImagePayload payload = decode_png(data);
  CHECK(payload.width == 3);
  CHECK(payload.height == 2);
  for (std::size_t i = 0; i < gray.size(); ++i) {
    CHECK(payload.pixels[3 * i] == gray[i]);
    CHECK(payload.pixels[3 * i + 1] == gray[i]);
    CHECK(payload.pixels[3 * i + 2] == gray[i]);
  }
}

TEST_CASE("png: unsupported variants are rejected") {
  const std::vector<std::uint8_t> wide(2 * 3 * 2 * 2);  // 16-bit RGB 2x2
  const auto sixteen = author_png(2, 2, PNG_COLOR_TYPE_RGB, 16, wide);
  CHECK_THROWS_WITH_AS((void)decode_png(sixteen), "16-bit PNG is not supported", Error);

  const std::vector<std::uint8_t> indexed = {0x40, 0x80};  // 1-bit palette rows
  const auto palette = author_png(2, 2, PNG_COLOR_TYPE_PALETTE, 1, indexed);
  CHECK_THROWS_WITH_AS((void)decode_png(palette), "palette PNG is not supported", Error);

  const std::vector<std::uint8_t> rgba(4 * 4);
  const auto alpha = author_png(2, 2, PNG_COLOR_TYPE_RGB_ALPHA, 8, rgba);
  CHECK_THROWS_AS((void)decode_png(alpha), Error);
}

TEST_CASE("png: truncated stream reports the offset") {
  std::mt19937_64 rng(0x7D);
  const auto encoded = encode_png(random_image(16, 16, rng));
  std::vector<std::uint8_t> cut(encoded.begin(), encoded.begin() + encoded.size() / 2);
  try {
    (void)decode_png(cut);
    FAIL("expected parse error");
  } catch (const Error &e) {
    CHECK(e.code() == IMGSHARE_ERROR_PARSE);
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
}

TEST_CASE("format detection") {
  std::mt19937_64 rng(0xDE7);
  const ImagePayload payload = random_image(4, 4, rng);
  CHECK(decode_image(encode_png(payload)) == payload);
  CHECK(decode_image(encode_ppm(payload)) == payload);
  CHECK_THROWS_AS((void)decode_image(bytes_of("GIF89a....")), Error);
}

TEST_CASE("padding: aligned image passes through") {
  std::mt19937_64 rng(0xA11);
  SeededEntropy entropy(1);
  const ImagePayload payload = random_image(640, 480, rng);
  const auto [padded, record] = pad_to_alignment(payload, entropy);
  CHECK(record.is_zero());
  CHECK(padded == payload);
}

TEST_CASE("padding: 5x5 grows to 8x8 and preserves the original region") {
  std::mt19937_64 rng(0x55);
  SeededEntropy entropy(2);
  const ImagePayload payload = random_image(5, 5, rng);
  const auto [padded, record] = pad_to_alignment(payload, entropy);
  CHECK(padded.width == 8);
  CHECK(padded.height == 8);
  CHECK(record.pad_right == 3);
  CHECK(record.pad_bottom == 3);
  CHECK(record.original_width == 5);
  CHECK(record.original_height == 5);
  CHECK(crop_padding(padded, record) == payload);
}

TEST_CASE("padding: crop(pad(x)) is the identity on random sizes") {
  std::mt19937_64 rng(0x1D);
  SeededEntropy entropy(3);
  std::uniform_int_distribution<std::uint32_t> dim(1, 100);
  for (int i = 0; i < 50; ++i) {
    const ImagePayload payload = random_image(dim(rng), dim(rng), rng);
    const auto [padded, record] = pad_to_alignment(payload, entropy);
    CHECK(padded.width % 4 == 0);
    CHECK(padded.height % 4 == 0);
    CHECK((padded.bit_count() % 384) == 0);
    CHECK(crop_padding(padded, record) == payload);
  }
}

TEST_CASE("padding: mismatched record is rejected") {
  std::mt19937_64 rng(0x2E);
  SeededEntropy entropy(4);
  const ImagePayload payload = random_image(5, 5, rng);
  const auto [padded, record] = pad_to_alignment(payload, entropy);
  PaddingRecord wrong = record;
  wrong.original_width += 1;
  CHECK_THROWS_AS((void)crop_padding(padded, wrong), Error);
}

TEST_CASE("padding bytes look uniform") {
  // Critical value of chi-square with 255 degrees of freedom at the 0.001
  // significance level.
  constexpr double kCritical = 330.5197436340059;
  SeededEntropy entropy(5);
  const ImagePayload payload =
      make_payload(3997, 3997, std::vector<std::uint8_t>(std::size_t{3} * 3997 * 3997, 0));
  const auto [padded, record] = pad_to_alignment(payload, entropy);
  REQUIRE(padded.width == 4000);
  REQUIRE(padded.height == 4000);

  std::vector<std::uint8_t> margin;
  for (std::uint32_t r = 0; r < padded.height; ++r) {
    const std::uint8_t *row = padded.pixels.data() + std::size_t{3} * padded.width * r;
    if (r < record.original_height) {
      margin.insert(margin.end(), row + std::size_t{3} * record.original_width,
                    row + std::size_t{3} * padded.width);
    } else {
      margin.insert(margin.end(), row, row + std::size_t{3} * padded.width);
    }
  }
  REQUIRE(margin.size() >= 64 * 1024);
  CHECK(oracles::chi_square_uniform_bytes(margin) < kCritical);
}

TEST_CASE("bit stream layout") {
  ImagePayload black = make_payload(2, 1, std::vector<std::uint8_t>(6, 0));
  const BitArray zero_bits = bits_of(black);
  CHECK(zero_bits.size() == 48);
  for (std::size_t k = 0; k < zero_bits.size(); ++k) CHECK_FALSE(zero_bits.bit(k));

  // A single red pixel: 11111111 00000000 00000000, MSB-first.
  ImagePayload red = make_payload(1, 1, {255, 0, 0});
  const BitArray bits = bits_of(red);
  REQUIRE(bits.size() == 24);
  for (std::size_t k = 0; k < 8; ++k) CHECK(bits.bit(k));
  for (std::size_t k = 8; k < 24; ++k) CHECK_FALSE(bits.bit(k));

  // Bit k is bit (7 - k%8) of byte k/8.
  ImagePayload sample = make_payload(1, 1, {0b10110001, 0x00, 0xFF});
  const BitArray s = bits_of(sample);
  CHECK(s.bit(0));
  CHECK_FALSE(s.bit(1));
  CHECK(s.bit(2));
  CHECK(s.bit(3));
  CHECK_FALSE(s.bit(6));
  CHECK(s.bit(7));
}

TEST_CASE("bits_of and payload_of are inverse") {
  std::mt19937_64 rng(0xB17);
  for (int i = 0; i < 20; ++i) {
    const std::uint32_t w = 1 + rng() % 64, h = 1 + rng() % 64;
    const ImagePayload payload = random_image(w, h, rng);
    CHECK(payload_of(bits_of(payload), w, h) == payload);
  }
  const ImagePayload payload = random_image(3, 3, rng);
  CHECK_THROWS_AS((void)payload_of(bits_of(payload), 3, 4), Error);
}

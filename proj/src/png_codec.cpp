#include <png.h>

#include <csetjmp>
#include <cstring>

#include "errors.hpp"
#include "imagecodec.hpp"

namespace imgshare {

namespace {

struct ReadState {
  const std::uint8_t *data;
  std::size_t size;
  std::size_t pos;
  bool overrun;
};

void read_callback(png_structp png, png_bytep out, png_size_t length) {
  auto *state = static_cast<ReadState *>(png_get_io_ptr(png));
  if (state->pos + length > state->size) {
    state->overrun = true;
    png_error(png, "unexpected end of PNG stream");
  }
  std::memcpy(out, state->data + state->pos, length);
  state->pos += length;
}

void write_callback(png_structp png, png_bytep data, png_size_t length) {
  auto *out = static_cast<std::vector<std::uint8_t> *>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void flush_callback(png_structp) {}

void error_callback(png_structp png, png_const_charp message) {
  auto *error_text = static_cast<std::string *>(png_get_error_ptr(png));
  if (error_text != nullptr && error_text->empty()) *error_text = message;
  longjmp(png_jmpbuf(png), 1);
}

void warning_callback(png_structp, png_const_charp) {}

}  // namespace

ImagePayload decode_png(std::span<const std::uint8_t> data) {
  std::string error_text;
  ReadState state{data.data(), data.size(), 0, false};

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error_text,
                                           error_callback, warning_callback);
  if (png == nullptr) raise(IMGSHARE_ERROR_INTERNAL, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    raise(IMGSHARE_ERROR_INTERNAL, "png_create_info_struct failed");
  }

  // Declared before setjmp so the error branch can read them.
  std::vector<std::uint8_t> pixels;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0, height = 0;
  int bit_depth = 0, color_type = 0;

  if (setjmp(png_jmpbuf(png)) != 0) {
    const bool truncated = state.overrun;
    const std::size_t offset = state.pos;
    png_destroy_read_struct(&png, &info, nullptr);
    if (truncated) {
      raise(IMGSHARE_ERROR_PARSE,
            "png parse error at byte " + std::to_string(offset) + ": truncated stream");
    }
    raise(IMGSHARE_ERROR_PARSE, "png parse error: " + error_text);
  }

  png_set_read_fn(png, &state, read_callback);
  png_read_info(png, info);
  png_get_IHDR(png, info, &width, &height, &bit_depth, &color_type, nullptr, nullptr, nullptr);

  if (width == 0 || height == 0 || width > (1u << 20) || height > (1u << 20)) {
    png_destroy_read_struct(&png, &info, nullptr);
    raise(IMGSHARE_ERROR_UNSUPPORTED, "image too large");
  }
  if (bit_depth == 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    raise(IMGSHARE_ERROR_UNSUPPORTED, "16-bit PNG is not supported");
  }
  if (color_type == PNG_COLOR_TYPE_PALETTE) {
    png_destroy_read_struct(&png, &info, nullptr);
    raise(IMGSHARE_ERROR_UNSUPPORTED, "palette PNG is not supported");
  }
  if ((color_type & PNG_COLOR_MASK_ALPHA) != 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    raise(IMGSHARE_ERROR_UNSUPPORTED, "PNG alpha channels are not supported");
  }
  if (color_type != PNG_COLOR_TYPE_RGB && color_type != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    raise(IMGSHARE_ERROR_UNSUPPORTED, "unsupported PNG color type");
  }
  if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color_type == PNG_COLOR_TYPE_GRAY) png_set_gray_to_rgb(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  if (png_get_rowbytes(png, info) != std::size_t{3} * width) {
    png_destroy_read_struct(&png, &info, nullptr);
    raise(IMGSHARE_ERROR_INTERNAL, "unexpected PNG row size after transforms");
  }

  pixels.resize(std::size_t{3} * width * height);
  rows.resize(height);
  for (png_uint_32 r = 0; r < height; ++r) {
    rows[r] = pixels.data() + std::size_t{3} * width * r;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  return make_payload(width, height, std::move(pixels));
}

std::vector<std::uint8_t> encode_png(const ImagePayload &payload) {
  std::string error_text;
  std::vector<std::uint8_t> out;

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error_text,
                                            error_callback, warning_callback);
  if (png == nullptr) raise(IMGSHARE_ERROR_INTERNAL, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    raise(IMGSHARE_ERROR_INTERNAL, "png_create_info_struct failed");
  }

  std::vector<png_bytep> rows(payload.height);
  for (std::uint32_t r = 0; r < payload.height; ++r) {
    rows[r] = const_cast<png_bytep>(payload.pixels.data() + std::size_t{3} * payload.width * r);
  }

  if (setjmp(png_jmpbuf(png)) != 0) {
    png_destroy_write_struct(&png, &info);
    raise(IMGSHARE_ERROR_INTERNAL, "png encode error: " + error_text);
  }

  png_set_write_fn(png, &out, write_callback, flush_callback);
  png_set_IHDR(png, info, payload.width, payload.height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace imgshare

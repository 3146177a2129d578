#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "image.hpp"

namespace imgshare {

// The two admitted formats. Both are lossless; lossy compression would
// destroy the bitstream the scheme operates on.
enum class ImageFormat { kPpm, kPng };

std::string to_string(ImageFormat format);
ImageFormat image_format_from_string(const std::string &s);
std::string file_extension(ImageFormat format);

// Binary PPM (P6, maxval 255). The reader accepts Netpbm whitespace and
// '#' comments in the header; the writer emits the canonical
// "P6\n<w> <h>\n255\n" header.
ImagePayload decode_ppm(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> encode_ppm(const ImagePayload &payload);

// 8-bit RGB or grayscale PNG; grayscale is expanded to RGB on read.
// Palette, 16-bit and alpha variants are rejected.
ImagePayload decode_png(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> encode_png(const ImagePayload &payload);

// Detects the format from the leading bytes.
ImagePayload decode_image(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> encode_image(const ImagePayload &payload, ImageFormat format);

ImagePayload read_image(const std::filesystem::path &path);
void write_image(const ImagePayload &payload, const std::filesystem::path &path,
                 ImageFormat format);

std::vector<std::uint8_t> read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> data);

}  // namespace imgshare

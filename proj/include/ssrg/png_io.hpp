#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <png.h>

#include "ssrg/image.hpp"

namespace ssrg {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace detail

// Reads an 8-bit RGB raster; palette and gray images are expanded, 16-bit
// depth is stripped, alpha is dropped.
inline RgbImage read_png_rgb(const std::string& path) {
  detail::FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw InputError("cannot open " + path);

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError("cannot decode " + path);
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);
  png_set_expand(png);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);

  const int width = static_cast<int>(png_get_image_width(png, info));
  const int height = static_cast<int>(png_get_image_height(png, info));
  RgbImage image(width, height);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y)
    rows[y] = reinterpret_cast<png_bytep>(&image.at(0, y));
  static_assert(sizeof(Rgb8) == 3);
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

// Reads a 16-bit grayscale label map.
inline LabelMap read_png_labels(const std::string& path) {
  detail::FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw InputError("cannot open " + path);

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError("cannot decode " + path);
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);
  if (png_get_color_type(png, info) != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError(path + " is not a grayscale label map");
  }
  if (png_get_bit_depth(png, info) < 16) png_set_expand_16(png);
  png_read_update_info(png, info);

  const int width = static_cast<int>(png_get_image_width(png, info));
  const int height = static_cast<int>(png_get_image_height(png, info));
  std::vector<std::uint8_t> row(static_cast<std::size_t>(width) * 2);
  LabelMap labels(width, height);
  for (int y = 0; y < height; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (int x = 0; x < width; ++x)
      labels.at(x, y) = (row[2 * x] << 8) | row[2 * x + 1];  // network order
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return labels;
}

namespace detail {

inline void write_png(const std::string& path, int width, int height,
                      int color_type, int bit_depth,
                      const std::vector<png_bytep>& rows) {
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot write " + path);

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("failed writing " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, width, height, bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, const_cast<png_bytep*>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace detail

inline void write_png_rgb(const std::string& path, const RgbImage& image) {
  std::vector<png_bytep> rows(image.height());
  for (int y = 0; y < image.height(); ++y)
    rows[y] = reinterpret_cast<png_bytep>(
        const_cast<Rgb8*>(&image.at(0, y)));
  detail::write_png(path, image.width(), image.height(), PNG_COLOR_TYPE_RGB, 8,
                    rows);
}

// Grayscale dump of a field already scaled into [0,255].
inline void write_png_gray(const std::string& path, const ScalarField& field) {
  std::vector<std::uint8_t> buf(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double v = field.data()[i];
    buf[i] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
  }
  std::vector<png_bytep> rows(field.height());
  for (int y = 0; y < field.height(); ++y)
    rows[y] = buf.data() + static_cast<std::size_t>(y) * field.width();
  detail::write_png(path, field.width(), field.height(), PNG_COLOR_TYPE_GRAY, 8,
                    rows);
}

// 16-bit grayscale label map, big-endian sample order per the PNG spec.
inline void write_png_labels(const std::string& path, const LabelMap& labels) {
  std::vector<std::uint8_t> buf(labels.size() * 2);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::int32_t l = labels.data()[i];
    if (l < 0 || l > 0xFFFF)
      throw IoError("label out of 16-bit range: " + std::to_string(l));
    buf[2 * i] = static_cast<std::uint8_t>(l >> 8);
    buf[2 * i + 1] = static_cast<std::uint8_t>(l & 0xFF);
  }
  std::vector<png_bytep> rows(labels.height());
  for (int y = 0; y < labels.height(); ++y)
    rows[y] = buf.data() + static_cast<std::size_t>(y) * labels.width() * 2;
  detail::write_png(path, labels.width(), labels.height(), PNG_COLOR_TYPE_GRAY,
                    16, rows);
}

}  // namespace ssrg

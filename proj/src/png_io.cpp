// Copyright 2026 The Panoptica Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "panoptica/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace panoptica {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void Fail(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error("png: " + what + ": " + path.string());
}

void WriteRows(const std::filesystem::path& path, int width, int height, int color_type,
               int bit_depth, const std::vector<png_bytep>& rows) {
  FilePtr file(std::fopen(path.string().c_str(), "wb"));
  if (!file) Fail(path, "cannot open for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) Fail(path, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    Fail(path, "png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    Fail(path, "libpng write error");
  }

  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  // Pin the compression setup; output bytes are part of the determinism
  // contract.
  png_set_compression_level(png, 6);
  png_set_filter(png, 0, PNG_FILTER_NONE);
  png_write_info(png, info);
  if (bit_depth == 16) png_set_swap(png);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FilePtr file;

  explicit PngReader(const std::filesystem::path& path) {
    file.reset(std::fopen(path.string().c_str(), "rb"));
    if (!file) Fail(path, "cannot open for reading");
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png == nullptr) Fail(path, "png_create_read_struct failed");
    info = png_create_info_struct(png);
    if (info == nullptr) Fail(path, "png_create_info_struct failed");
  }
  ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
  PngReader(const PngReader&) = delete;
  PngReader& operator=(const PngReader&) = delete;
};

}  // namespace

void WritePng(const std::filesystem::path& path, const RgbImage& image) {
  std::vector<png_bytep> rows(image.height());
  for (int y = 0; y < image.height(); ++y) {
    rows[y] = reinterpret_cast<png_bytep>(
        const_cast<Rgb8*>(image.data() + static_cast<std::size_t>(y) * image.width()));
  }
  WriteRows(path, image.width(), image.height(), PNG_COLOR_TYPE_RGB, 8, rows);
}

void WritePng(const std::filesystem::path& path, const GrayImage& image) {
  std::vector<png_bytep> rows(image.height());
  for (int y = 0; y < image.height(); ++y) {
    rows[y] = const_cast<png_bytep>(image.data() + static_cast<std::size_t>(y) * image.width());
  }
  WriteRows(path, image.width(), image.height(), PNG_COLOR_TYPE_GRAY, 8, rows);
}

void WritePng(const std::filesystem::path& path, const Image<std::uint16_t>& image) {
  std::vector<png_bytep> rows(image.height());
  for (int y = 0; y < image.height(); ++y) {
    rows[y] = reinterpret_cast<png_bytep>(
        const_cast<std::uint16_t*>(image.data() + static_cast<std::size_t>(y) * image.width()));
  }
  WriteRows(path, image.width(), image.height(), PNG_COLOR_TYPE_GRAY, 16, rows);
}

RgbImage ReadPngRgb(const std::filesystem::path& path) {
  PngReader reader(path);
  if (setjmp(png_jmpbuf(reader.png))) Fail(path, "libpng read error");
  png_init_io(reader.png, reader.file.get());
  png_read_info(reader.png, reader.info);

  // Normalize whatever we get to 8-bit RGB.
  png_set_expand(reader.png);
  png_set_strip_16(reader.png);
  png_set_strip_alpha(reader.png);
  png_set_gray_to_rgb(reader.png);
  png_read_update_info(reader.png, reader.info);

  const int width = static_cast<int>(png_get_image_width(reader.png, reader.info));
  const int height = static_cast<int>(png_get_image_height(reader.png, reader.info));
  if (png_get_rowbytes(reader.png, reader.info) != static_cast<std::size_t>(width) * 3) {
    Fail(path, "unexpected row size after RGB conversion");
  }
  RgbImage image(width, height);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = reinterpret_cast<png_bytep>(image.data() + static_cast<std::size_t>(y) * width);
  }
  png_read_image(reader.png, rows.data());
  png_read_end(reader.png, nullptr);
  return image;
}

GrayImage ReadPngGray8(const std::filesystem::path& path) {
  PngReader reader(path);
  if (setjmp(png_jmpbuf(reader.png))) Fail(path, "libpng read error");
  png_init_io(reader.png, reader.file.get());
  png_read_info(reader.png, reader.info);
  if (png_get_color_type(reader.png, reader.info) != PNG_COLOR_TYPE_GRAY ||
      png_get_bit_depth(reader.png, reader.info) != 8) {
    Fail(path, "expected 8-bit grayscale");
  }
  const int width = static_cast<int>(png_get_image_width(reader.png, reader.info));
  const int height = static_cast<int>(png_get_image_height(reader.png, reader.info));
  GrayImage image(width, height);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = image.data() + static_cast<std::size_t>(y) * width;
  }
  png_read_image(reader.png, rows.data());
  png_read_end(reader.png, nullptr);
  return image;
}

Image<std::uint16_t> ReadPngGray16(const std::filesystem::path& path) {
  PngReader reader(path);
  if (setjmp(png_jmpbuf(reader.png))) Fail(path, "libpng read error");
  png_init_io(reader.png, reader.file.get());
  png_read_info(reader.png, reader.info);
  if (png_get_color_type(reader.png, reader.info) != PNG_COLOR_TYPE_GRAY ||
      png_get_bit_depth(reader.png, reader.info) != 16) {
    Fail(path, "expected 16-bit grayscale");
  }
  png_set_swap(reader.png);
  const int width = static_cast<int>(png_get_image_width(reader.png, reader.info));
  const int height = static_cast<int>(png_get_image_height(reader.png, reader.info));
  Image<std::uint16_t> image(width, height);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = reinterpret_cast<png_bytep>(image.data() + static_cast<std::size_t>(y) * width);
  }
  png_read_image(reader.png, rows.data());
  png_read_end(reader.png, nullptr);
  return image;
}

}  // namespace panoptica

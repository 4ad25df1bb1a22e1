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

#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace panoptica {

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

inline constexpr Rgb8 kBlack{0, 0, 0};

/// Packs a color into a single integer key (r + g*256 + b*65536).
inline constexpr std::uint32_t PackColor(Rgb8 c) {
  return static_cast<std::uint32_t>(c.r) | (static_cast<std::uint32_t>(c.g) << 8) |
         (static_cast<std::uint32_t>(c.b) << 16);
}

/// Dense row-major pixel buffer. Coordinates are x right, y down,
/// origin at the top-left pixel.
template <typename T>
class Image {
 public:
  Image() = default;
  Image(int width, int height, T fill = T{})
      : width_(width), height_(height), pixels_(static_cast<std::size_t>(width) * height, fill) {
    assert(width >= 0 && height >= 0);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  bool InBounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }

  T& at(int x, int y) {
    assert(InBounds(x, y));
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  const T& at(int x, int y) const {
    assert(InBounds(x, y));
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }

  T* data() { return pixels_.data(); }
  const T* data() const { return pixels_.data(); }

  void Fill(T value) { pixels_.assign(pixels_.size(), value); }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> pixels_;
};

using RgbImage = Image<Rgb8>;
using GrayImage = Image<std::uint8_t>;
using IndexImage = Image<std::int32_t>;
using DepthImage = Image<float>;

}  // namespace panoptica

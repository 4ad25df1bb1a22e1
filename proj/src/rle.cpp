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

#include "panoptica/rle.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace panoptica {

RleMask::RleMask(int width, int height, std::vector<std::int64_t> counts)
    : width_(width), height_(height), counts_(std::move(counts)) {
  if (width < 0 || height < 0) throw std::invalid_argument("rle: negative dimensions");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const std::int64_t run = counts_[i];
    if (run < 0) throw std::invalid_argument("rle: negative run length");
    if (run == 0 && i != 0) throw std::invalid_argument("rle: zero-length interior run");
    total += run;
    if (i % 2 == 1) area_ += run;
  }
  if (total != static_cast<std::int64_t>(width) * height) {
    throw std::invalid_argument("rle: counts do not sum to width*height");
  }
}

RleMask RleMask::FromDense(const GrayImage& mask) {
  RleMask rle;
  rle.width_ = mask.width();
  rle.height_ = mask.height();
  const std::uint8_t* pixels = mask.data();
  const std::size_t n = mask.pixel_count();
  std::size_t i = 0;
  bool current = false;  // runs start with zeros
  while (i < n) {
    std::size_t run_start = i;
    while (i < n && (pixels[i] != 0) == current) ++i;
    rle.counts_.push_back(static_cast<std::int64_t>(i - run_start));
    if (current) rle.area_ += static_cast<std::int64_t>(i - run_start);
    current = !current;
  }
  return rle;
}

GrayImage RleMask::ToDense() const {
  GrayImage mask(width_, height_);
  std::uint8_t* pixels = mask.data();
  std::size_t offset = 0;
  bool value = false;
  for (const std::int64_t run : counts_) {
    if (value) std::fill(pixels + offset, pixels + offset + run, std::uint8_t{1});
    offset += static_cast<std::size_t>(run);
    value = !value;
  }
  return mask;
}

bool RleMask::at(int x, int y) const {
  const std::int64_t target = static_cast<std::int64_t>(y) * width_ + x;
  std::int64_t offset = 0;
  bool value = false;
  for (const std::int64_t run : counts_) {
    offset += run;
    if (target < offset) return value;
    value = !value;
  }
  return false;
}

namespace {

// Half-open [begin, end) linear offsets of the set runs.
std::vector<std::pair<std::int64_t, std::int64_t>> SetIntervals(const RleMask& mask) {
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
  std::int64_t pos = 0;
  bool value = false;
  for (const std::int64_t run : mask.counts()) {
    if (value && run > 0) intervals.emplace_back(pos, pos + run);
    pos += run;
    value = !value;
  }
  return intervals;
}

}  // namespace

std::int64_t IntersectionArea(const RleMask& a, const RleMask& b) {
  if (!a.SameSizeAs(b)) throw std::invalid_argument("rle: dimension mismatch");
  const auto intervals_a = SetIntervals(a);
  const auto intervals_b = SetIntervals(b);
  std::size_t i = 0, j = 0;
  std::int64_t intersection = 0;
  while (i < intervals_a.size() && j < intervals_b.size()) {
    const std::int64_t lo = std::max(intervals_a[i].first, intervals_b[j].first);
    const std::int64_t hi = std::min(intervals_a[i].second, intervals_b[j].second);
    if (lo < hi) intersection += hi - lo;
    if (intervals_a[i].second < intervals_b[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
  return intersection;
}

}  // namespace panoptica

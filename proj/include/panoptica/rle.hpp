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

#include <cstdint>
#include <vector>

#include "panoptica/image.hpp"

namespace panoptica {

/// Run-length encoded binary mask.
///
/// The pixel grid is scanned row-major (y outer, x inner); `counts` holds
/// alternating run lengths starting with a run of zeros, so counts[0] may be
/// 0 when the first pixel is set. The sum of counts always equals
/// width*height. The byte-level JSON form is specified in docs/formats.md.
class RleMask {
 public:
  RleMask() = default;
  RleMask(int width, int height, std::vector<std::int64_t> counts);

  static RleMask FromDense(const GrayImage& mask);  // any nonzero pixel is set
  GrayImage ToDense() const;                        // 0/1 pixels

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t area() const { return area_; }
  bool SameSizeAs(const RleMask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  bool at(int x, int y) const;  // linear scan; test/debug use only

  friend bool operator==(const RleMask&, const RleMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::int64_t> counts_;
  std::int64_t area_ = 0;
};

/// |a ∩ b| by merging run boundaries; masks must share dimensions.
std::int64_t IntersectionArea(const RleMask& a, const RleMask& b);

}  // namespace panoptica

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
#include <optional>
#include <vector>

#include "panoptica/image.hpp"
#include "panoptica/rle.hpp"
#include "panoptica/taxonomy.hpp"

namespace panoptica {

/// Tight axis-aligned pixel bound, x/y top-left, w/h in pixels.
struct PixelBox {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

/// Throws std::invalid_argument on an empty mask.
PixelBox MaskToBbox(const RleMask& mask);

/// Segment id of a palette color: r + g*256 + b*65536.
int EncodeSegmentId(Rgb8 color);

/// Base-256 digit extraction; throws std::out_of_range unless 0 <= id < 2^24.
Rgb8 DecodeSegmentId(int id);

struct ConnectedComponentsResult {
  IndexImage labels;  // -1 background, else component index
  int count = 0;      // components numbered 0..count-1 in first-pixel scan order
};

/// Labels nonzero pixels of `mask` with 4- or 8-connectivity.
ConnectedComponentsResult ConnectedComponents(const GrayImage& mask, int connectivity = 8);

/// One panoptic segment: a category's full stuff region, or one thing
/// instance.
struct Segment {
  int category = 0;
  RleMask mask;
  std::int64_t area = 0;
  PixelBox bbox;
  std::optional<int> instance_ordinal;  // 1-based within the category; things only
  std::uint64_t panoptic_id = 0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct SegmentationOptions {
  /// When set, thing segments follow the instance buffer (one segment per
  /// instance id); otherwise they come from connected components per
  /// category.
  const IndexImage* instance = nullptr;
  int connectivity = 8;
  /// Off-palette pixels: error by default; lenient mode treats them as
  /// unlabeled, for masks produced outside the renderer.
  bool lenient = false;
};

/// Splits a semantic image into segments: one per present stuff category, one
/// per thing instance. Segments are ordered by (category, instance ordinal).
/// Panoptic ids: stuff = EncodeSegmentId(category color); things add
/// instance_ordinal * 2^24 on top of the category color id.
/// Throws std::runtime_error naming the pixel for off-palette colors in
/// strict mode, and for any instance-buffer inconsistency (thing pixel
/// without an instance id, instance id on a non-thing pixel, one instance id
/// spanning two categories).
std::vector<Segment> SemanticToSegments(const RgbImage& semantic, const Taxonomy& taxonomy,
                                        const SegmentationOptions& options = {});

/// Per-pixel panoptic encoding: things 0, stuff its 1-based stuff ordinal,
/// unlabeled 255. Off-palette pixels throw std::runtime_error naming the
/// pixel, or become unlabeled when lenient; taxonomies whose stuff count
/// exceeds the 254-id space always throw.
GrayImage BuildPanopticImage(const RgbImage& semantic, const Taxonomy& taxonomy,
                             bool lenient = false);

}  // namespace panoptica

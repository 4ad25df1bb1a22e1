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

#include "panoptica/annotate.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "panoptica/mesh.hpp"

namespace panoptica {
namespace {

constexpr int kVoidPanopticValue = 255;

std::string PixelName(int x, int y) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
}

/// Category of each pixel: palette index, or kUnlabeledCategory for black
/// and (leniently) off-palette colors.
IndexImage CategorizePixels(const RgbImage& semantic, const Taxonomy& taxonomy, bool lenient) {
  IndexImage categories(semantic.width(), semantic.height(), kUnlabeledCategory);
  for (int y = 0; y < semantic.height(); ++y) {
    for (int x = 0; x < semantic.width(); ++x) {
      const Rgb8 color = semantic.at(x, y);
      if (color == kBlack) continue;
      const std::optional<int> category = taxonomy.CategoryFromColor(color);
      if (category.has_value()) {
        categories.at(x, y) = *category;
      } else if (!lenient) {
        throw std::runtime_error("annotate: off-palette color (" + std::to_string(color.r) +
                                 ", " + std::to_string(color.g) + ", " + std::to_string(color.b) +
                                 ") at pixel " + PixelName(x, y));
      }
    }
  }
  return categories;
}

Segment FinishSegment(int category, const GrayImage& dense, std::optional<int> ordinal,
                      Rgb8 category_color) {
  Segment segment;
  segment.category = category;
  segment.mask = RleMask::FromDense(dense);
  segment.area = segment.mask.area();
  segment.bbox = MaskToBbox(segment.mask);
  segment.instance_ordinal = ordinal;
  segment.panoptic_id = static_cast<std::uint64_t>(EncodeSegmentId(category_color));
  if (ordinal.has_value()) {
    segment.panoptic_id += static_cast<std::uint64_t>(*ordinal) << 24;
  }
  return segment;
}

}  // namespace

PixelBox MaskToBbox(const RleMask& mask) {
  if (mask.area() == 0) throw std::invalid_argument("annotate: bbox of an empty mask");
  int x_min = mask.width(), x_max = -1, y_min = mask.height(), y_max = -1;
  std::int64_t index = 0;
  bool set = false;
  for (const std::int64_t run : mask.counts()) {
    if (set) {
      for (std::int64_t i = index; i < index + run; ++i) {
        const int x = static_cast<int>(i % mask.width());
        const int y = static_cast<int>(i / mask.width());
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
    index += run;
    set = !set;
  }
  return PixelBox{x_min, y_min, x_max - x_min + 1, y_max - y_min + 1};
}

int EncodeSegmentId(Rgb8 color) {
  return static_cast<int>(color.r) + static_cast<int>(color.g) * 256 +
         static_cast<int>(color.b) * 65536;
}

Rgb8 DecodeSegmentId(int id) {
  if (id < 0 || id >= (1 << 24)) {
    throw std::out_of_range("annotate: segment id " + std::to_string(id) +
                            " outside [0, 2^24)");
  }
  return Rgb8{static_cast<std::uint8_t>(id & 0xFF), static_cast<std::uint8_t>((id >> 8) & 0xFF),
              static_cast<std::uint8_t>((id >> 16) & 0xFF)};
}

ConnectedComponentsResult ConnectedComponents(const GrayImage& mask, int connectivity) {
  if (connectivity != 4 && connectivity != 8) {
    throw std::invalid_argument("annotate: connectivity must be 4 or 8");
  }
  const int width = mask.width(), height = mask.height();
  ConnectedComponentsResult result;
  result.labels = IndexImage(width, height, -1);

  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (mask.at(x, y) == 0 || result.labels.at(x, y) != -1) continue;
      const int label = result.count++;
      stack.push_back({x, y});
      result.labels.at(x, y) = label;
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (connectivity == 4 && dx != 0 && dy != 0) continue;
            const int nx = cx + dx, ny = cy + dy;
            if (!mask.InBounds(nx, ny)) continue;
            if (mask.at(nx, ny) == 0 || result.labels.at(nx, ny) != -1) continue;
            result.labels.at(nx, ny) = label;
            stack.push_back({nx, ny});
          }
        }
      }
    }
  }
  return result;
}

std::vector<Segment> SemanticToSegments(const RgbImage& semantic, const Taxonomy& taxonomy,
                                        const SegmentationOptions& options) {
  const int width = semantic.width(), height = semantic.height();
  if (options.instance != nullptr &&
      (options.instance->width() != width || options.instance->height() != height)) {
    throw std::invalid_argument("annotate: instance buffer dimensions differ from semantic");
  }
  const IndexImage categories = CategorizePixels(semantic, taxonomy, options.lenient);

  std::vector<Segment> segments;

  // Stuff: one mask per category present.
  std::map<int, GrayImage> stuff_masks;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int category = categories.at(x, y);
      if (category == kUnlabeledCategory || taxonomy.IsThing(category)) continue;
      auto [it, inserted] = stuff_masks.try_emplace(category, width, height);
      it->second.at(x, y) = 1;
    }
  }
  for (const auto& [category, dense] : stuff_masks) {
    segments.push_back(
        FinishSegment(category, dense, std::nullopt, taxonomy.category(category).color));
  }

  if (options.instance != nullptr) {
    // One segment per instance id; the buffer must agree with the semantic
    // image pixel for pixel.
    std::map<std::int32_t, std::pair<int, GrayImage>> by_instance;  // id -> (category, mask)
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const std::int32_t id = options.instance->at(x, y);
        const int category = categories.at(x, y);
        const bool thing = category != kUnlabeledCategory && taxonomy.IsThing(category);
        if (id == 0) {
          if (thing) {
            throw std::runtime_error("annotate: thing pixel without an instance id at " +
                                     PixelName(x, y));
          }
          continue;
        }
        if (id < 0) {
          throw std::runtime_error("annotate: negative instance id at " + PixelName(x, y));
        }
        if (!thing) {
          throw std::runtime_error("annotate: instance id on a non-thing pixel at " +
                                   PixelName(x, y));
        }
        auto [it, inserted] = by_instance.try_emplace(id, category, GrayImage(width, height));
        if (!inserted && it->second.first != category) {
          throw std::runtime_error("annotate: instance id " + std::to_string(id) +
                                   " spans two categories (first conflict at " + PixelName(x, y) +
                                   ")");
        }
        it->second.second.at(x, y) = 1;
      }
    }
    std::map<int, int> next_ordinal;  // per category, 1-based in instance-id order
    for (const auto& [id, entry] : by_instance) {
      const auto& [category, dense] = entry;
      const int ordinal = ++next_ordinal[category];
      segments.push_back(
          FinishSegment(category, dense, ordinal, taxonomy.category(category).color));
    }
  } else {
    // Mask-only path: connected components within each thing category.
    std::map<int, GrayImage> thing_masks;
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const int category = categories.at(x, y);
        if (category == kUnlabeledCategory || !taxonomy.IsThing(category)) continue;
        auto [it, inserted] = thing_masks.try_emplace(category, width, height);
        it->second.at(x, y) = 1;
      }
    }
    for (const auto& [category, dense] : thing_masks) {
      const ConnectedComponentsResult components =
          ConnectedComponents(dense, options.connectivity);
      for (int component = 0; component < components.count; ++component) {
        GrayImage component_mask(width, height);
        for (int y = 0; y < height; ++y) {
          for (int x = 0; x < width; ++x) {
            if (components.labels.at(x, y) == component) component_mask.at(x, y) = 1;
          }
        }
        segments.push_back(FinishSegment(category, component_mask, component + 1,
                                         taxonomy.category(category).color));
      }
    }
  }

  std::sort(segments.begin(), segments.end(), [](const Segment& a, const Segment& b) {
    if (a.category != b.category) return a.category < b.category;
    return a.instance_ordinal.value_or(0) < b.instance_ordinal.value_or(0);
  });
  return segments;
}

GrayImage BuildPanopticImage(const RgbImage& semantic, const Taxonomy& taxonomy,
                             bool lenient) {
  if (taxonomy.stuff_count() > 254) {
    throw std::runtime_error("annotate: " + std::to_string(taxonomy.stuff_count()) +
                             " stuff categories exceed the 254-id panoptic space");
  }
  GrayImage panoptic(semantic.width(), semantic.height(), kVoidPanopticValue);
  for (int y = 0; y < semantic.height(); ++y) {
    for (int x = 0; x < semantic.width(); ++x) {
      const Rgb8 color = semantic.at(x, y);
      if (color == kBlack) continue;
      const std::optional<int> category = taxonomy.CategoryFromColor(color);
      if (!category.has_value()) {
        if (lenient) continue;
        throw std::runtime_error("annotate: off-palette color at pixel " + PixelName(x, y));
      }
      panoptic.at(x, y) = taxonomy.IsThing(*category)
                              ? 0
                              : static_cast<std::uint8_t>(taxonomy.StuffOrdinal(*category));
    }
  }
  return panoptic;
}

}  // namespace panoptica

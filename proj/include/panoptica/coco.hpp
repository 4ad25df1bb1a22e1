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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "panoptica/annotate.hpp"
#include "panoptica/image.hpp"
#include "panoptica/rle.hpp"
#include "panoptica/taxonomy.hpp"

namespace panoptica {

struct CocoImage {
  int id = 0;
  std::string file_name;
  int width = 0;
  int height = 0;

  friend bool operator==(const CocoImage&, const CocoImage&) = default;
};

struct CocoCategory {
  int id = 0;  // taxonomy index
  std::string name;
  bool isthing = false;
  Rgb8 color;

  friend bool operator==(const CocoCategory&, const CocoCategory&) = default;
};

struct InstanceAnnotation {
  int id = 0;  // sequential from 1 across the document
  int image_id = 0;
  int category_id = 0;
  PixelBox bbox;
  std::int64_t area = 0;
  RleMask mask;
  std::optional<double> score;  // predictions only

  friend bool operator==(const InstanceAnnotation&, const InstanceAnnotation&) = default;
};

struct InstanceDocument {
  std::vector<CocoImage> images;
  std::vector<CocoCategory> categories;
  std::vector<InstanceAnnotation> annotations;

  friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;
};

struct PanopticSegmentInfo {
  std::uint64_t id = 0;  // Segment::panoptic_id
  int category_id = 0;
  PixelBox bbox;
  std::int64_t area = 0;
  RleMask mask;  // embedded so the document round-trips without the pixel files
  std::optional<double> score;

  friend bool operator==(const PanopticSegmentInfo&, const PanopticSegmentInfo&) = default;
};

struct PanopticAnnotation {
  int image_id = 0;
  std::string file_name;  // the frame's panoptic PNG
  std::vector<PanopticSegmentInfo> segments_info;

  friend bool operator==(const PanopticAnnotation&, const PanopticAnnotation&) = default;
};

struct PanopticDocument {
  std::vector<CocoImage> images;
  std::vector<CocoCategory> categories;
  std::vector<PanopticAnnotation> annotations;

  friend bool operator==(const PanopticDocument&, const PanopticDocument&) = default;
};

/// One frame's worth of conversion output entering the exporters.
struct FrameAnnotation {
  CocoImage image;
  std::string panoptic_file_name;
  std::vector<Segment> segments;
};

/// Thing segments only; annotation ids run 1.. in frame order. Categories
/// cover the whole taxonomy with thing/stuff flags. Throws on segments whose
/// category is outside the taxonomy.
InstanceDocument BuildInstanceDocument(const Taxonomy& taxonomy,
                                       const std::vector<FrameAnnotation>& frames);

/// All segments, stuff and things, with their panoptic ids.
PanopticDocument BuildPanopticDocument(const Taxonomy& taxonomy,
                                       const std::vector<FrameAnnotation>& frames);

/// Canonical text form: stable key order, two-space indent, trailing newline.
/// Serialize followed by Parse reproduces the document exactly.
std::string SerializeInstanceDocument(const InstanceDocument& document);
std::string SerializePanopticDocument(const PanopticDocument& document);

/// Parse with structural validation: unique image/annotation ids, resolvable
/// image and category references, run lengths consistent with the declared
/// mask size, area equal to the mask area. Throws std::runtime_error.
InstanceDocument ParseInstanceDocument(std::string_view text);
PanopticDocument ParsePanopticDocument(std::string_view text);

}  // namespace panoptica

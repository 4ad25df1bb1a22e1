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

#include "panoptica/coco.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace panoptica {
namespace {

using nlohmann::json;

json BoxToJson(const PixelBox& box) {
  return json::array({box.x, box.y, box.width, box.height});
}

PixelBox BoxFromJson(const json& node) {
  if (!node.is_array() || node.size() != 4) {
    throw std::runtime_error("coco: bbox must be a [x, y, width, height] array");
  }
  PixelBox box;
  box.x = node[0].get<int>();
  box.y = node[1].get<int>();
  box.width = node[2].get<int>();
  box.height = node[3].get<int>();
  return box;
}

json MaskToJson(const RleMask& mask) {
  json node;
  node["size"] = json::array({mask.height(), mask.width()});
  node["counts"] = mask.counts();
  return node;
}

RleMask MaskFromJson(const json& node) {
  const json& size = node.at("size");
  if (!size.is_array() || size.size() != 2) {
    throw std::runtime_error("coco: segmentation size must be [height, width]");
  }
  const int height = size[0].get<int>();
  const int width = size[1].get<int>();
  const auto counts = node.at("counts").get<std::vector<std::int64_t>>();
  try {
    return RleMask(width, height, counts);
  } catch (const std::invalid_argument& error) {
    throw std::runtime_error(std::string("coco: bad segmentation: ") + error.what());
  }
}

json ImagesToJson(const std::vector<CocoImage>& images) {
  json out = json::array();
  for (const CocoImage& image : images) {
    json node;
    node["file_name"] = image.file_name;
    node["height"] = image.height;
    node["id"] = image.id;
    node["width"] = image.width;
    out.push_back(std::move(node));
  }
  return out;
}

json CategoriesToJson(const std::vector<CocoCategory>& categories) {
  json out = json::array();
  for (const CocoCategory& category : categories) {
    json node;
    node["color"] = json::array({category.color.r, category.color.g, category.color.b});
    node["id"] = category.id;
    node["isthing"] = category.isthing ? 1 : 0;
    node["name"] = category.name;
    out.push_back(std::move(node));
  }
  return out;
}

std::vector<CocoImage> ImagesFromJson(const json& node) {
  std::vector<CocoImage> images;
  for (const json& entry : node) {
    CocoImage image;
    image.id = entry.at("id").get<int>();
    image.file_name = entry.at("file_name").get<std::string>();
    image.width = entry.at("width").get<int>();
    image.height = entry.at("height").get<int>();
    if (image.width <= 0 || image.height <= 0) {
      throw std::runtime_error("coco: image " + std::to_string(image.id) +
                               " has non-positive dimensions");
    }
    images.push_back(std::move(image));
  }
  return images;
}

std::vector<CocoCategory> CategoriesFromJson(const json& node) {
  std::vector<CocoCategory> categories;
  for (const json& entry : node) {
    CocoCategory category;
    category.id = entry.at("id").get<int>();
    category.name = entry.at("name").get<std::string>();
    category.isthing = entry.at("isthing").get<int>() != 0;
    const json& color = entry.at("color");
    if (!color.is_array() || color.size() != 3) {
      throw std::runtime_error("coco: category color must be [r, g, b]");
    }
    for (const json& channel : color) {
      const int value = channel.get<int>();
      if (value < 0 || value > 255) {
        throw std::runtime_error("coco: category color channel out of range");
      }
    }
    category.color = Rgb8{color[0].get<std::uint8_t>(), color[1].get<std::uint8_t>(),
                          color[2].get<std::uint8_t>()};
    categories.push_back(std::move(category));
  }
  return categories;
}

std::vector<CocoCategory> CategoriesFromTaxonomy(const Taxonomy& taxonomy) {
  std::vector<CocoCategory> categories;
  categories.reserve(taxonomy.size());
  for (int i = 0; i < taxonomy.size(); ++i) {
    const SemanticCategory& info = taxonomy.category(i);
    CocoCategory category;
    category.id = i;
    category.name = info.name;
    category.isthing = info.kind == CategoryKind::kThing;
    category.color = info.color;
    categories.push_back(std::move(category));
  }
  return categories;
}

void CheckSegmentCategory(const Taxonomy& taxonomy, const Segment& segment) {
  if (segment.category < 0 || segment.category >= taxonomy.size()) {
    throw std::runtime_error("coco: segment category " + std::to_string(segment.category) +
                             " is outside the taxonomy");
  }
}

/// Shared reference checks; `mask_of` maps an annotation to its mask so both
/// document flavors validate size and area the same way.
struct ImageIndex {
  std::map<int, const CocoImage*> by_id;

  explicit ImageIndex(const std::vector<CocoImage>& images) {
    for (const CocoImage& image : images) {
      if (!by_id.emplace(image.id, &image).second) {
        throw std::runtime_error("coco: duplicate image id " + std::to_string(image.id));
      }
    }
  }

  const CocoImage& Resolve(int image_id) const {
    const auto it = by_id.find(image_id);
    if (it == by_id.end()) {
      throw std::runtime_error("coco: annotation references missing image id " +
                               std::to_string(image_id));
    }
    return *it->second;
  }
};

std::set<int> CategoryIds(const std::vector<CocoCategory>& categories) {
  std::set<int> ids;
  for (const CocoCategory& category : categories) {
    if (!ids.insert(category.id).second) {
      throw std::runtime_error("coco: duplicate category id " + std::to_string(category.id));
    }
  }
  return ids;
}

void CheckMaskAgainstImage(const RleMask& mask, std::int64_t area, const CocoImage& image,
                           const std::string& label) {
  if (mask.width() != image.width || mask.height() != image.height) {
    throw std::runtime_error("coco: " + label + " mask size does not match image " +
                             std::to_string(image.id));
  }
  if (mask.area() != area) {
    throw std::runtime_error("coco: " + label + " declares area " + std::to_string(area) +
                             " but its mask covers " + std::to_string(mask.area()));
  }
}

}  // namespace

InstanceDocument BuildInstanceDocument(const Taxonomy& taxonomy,
                                       const std::vector<FrameAnnotation>& frames) {
  InstanceDocument document;
  document.categories = CategoriesFromTaxonomy(taxonomy);
  int next_id = 1;
  for (const FrameAnnotation& frame : frames) {
    document.images.push_back(frame.image);
    for (const Segment& segment : frame.segments) {
      if (!segment.instance_ordinal.has_value()) {
        continue;
      }
      CheckSegmentCategory(taxonomy, segment);
      InstanceAnnotation annotation;
      annotation.id = next_id++;
      annotation.image_id = frame.image.id;
      annotation.category_id = segment.category;
      annotation.bbox = segment.bbox;
      annotation.area = segment.area;
      annotation.mask = segment.mask;
      document.annotations.push_back(std::move(annotation));
    }
  }
  return document;
}

PanopticDocument BuildPanopticDocument(const Taxonomy& taxonomy,
                                       const std::vector<FrameAnnotation>& frames) {
  PanopticDocument document;
  document.categories = CategoriesFromTaxonomy(taxonomy);
  for (const FrameAnnotation& frame : frames) {
    document.images.push_back(frame.image);
    PanopticAnnotation annotation;
    annotation.image_id = frame.image.id;
    annotation.file_name = frame.panoptic_file_name;
    for (const Segment& segment : frame.segments) {
      CheckSegmentCategory(taxonomy, segment);
      PanopticSegmentInfo info;
      info.id = segment.panoptic_id;
      info.category_id = segment.category;
      info.bbox = segment.bbox;
      info.area = segment.area;
      info.mask = segment.mask;
      annotation.segments_info.push_back(std::move(info));
    }
    document.annotations.push_back(std::move(annotation));
  }
  return document;
}

std::string SerializeInstanceDocument(const InstanceDocument& document) {
  json doc;
  doc["images"] = ImagesToJson(document.images);
  doc["categories"] = CategoriesToJson(document.categories);
  json annotations = json::array();
  for (const InstanceAnnotation& annotation : document.annotations) {
    json node;
    node["area"] = annotation.area;
    node["bbox"] = BoxToJson(annotation.bbox);
    node["category_id"] = annotation.category_id;
    node["id"] = annotation.id;
    node["image_id"] = annotation.image_id;
    node["segmentation"] = MaskToJson(annotation.mask);
    if (annotation.score.has_value()) {
      node["score"] = *annotation.score;
    }
    annotations.push_back(std::move(node));
  }
  doc["annotations"] = std::move(annotations);
  return doc.dump(2) + "\n";
}

std::string SerializePanopticDocument(const PanopticDocument& document) {
  json doc;
  doc["images"] = ImagesToJson(document.images);
  doc["categories"] = CategoriesToJson(document.categories);
  json annotations = json::array();
  for (const PanopticAnnotation& annotation : document.annotations) {
    json node;
    node["file_name"] = annotation.file_name;
    node["image_id"] = annotation.image_id;
    json segments = json::array();
    for (const PanopticSegmentInfo& info : annotation.segments_info) {
      json seg;
      seg["area"] = info.area;
      seg["bbox"] = BoxToJson(info.bbox);
      seg["category_id"] = info.category_id;
      seg["id"] = info.id;
      seg["segmentation"] = MaskToJson(info.mask);
      if (info.score.has_value()) {
        seg["score"] = *info.score;
      }
      segments.push_back(std::move(seg));
    }
    node["segments_info"] = std::move(segments);
    annotations.push_back(std::move(node));
  }
  doc["annotations"] = std::move(annotations);
  return doc.dump(2) + "\n";
}

InstanceDocument ParseInstanceDocument(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& error) {
    throw std::runtime_error(std::string("coco: not valid JSON: ") + error.what());
  }
  InstanceDocument document;
  try {
    document.images = ImagesFromJson(doc.at("images"));
    document.categories = CategoriesFromJson(doc.at("categories"));
    const ImageIndex images(document.images);
    const std::set<int> categories = CategoryIds(document.categories);
    std::set<int> annotation_ids;
    for (const json& entry : doc.at("annotations")) {
      InstanceAnnotation annotation;
      annotation.id = entry.at("id").get<int>();
      annotation.image_id = entry.at("image_id").get<int>();
      annotation.category_id = entry.at("category_id").get<int>();
      annotation.bbox = BoxFromJson(entry.at("bbox"));
      annotation.area = entry.at("area").get<std::int64_t>();
      annotation.mask = MaskFromJson(entry.at("segmentation"));
      if (entry.contains("score")) {
        annotation.score = entry.at("score").get<double>();
      }
      if (!annotation_ids.insert(annotation.id).second) {
        throw std::runtime_error("coco: duplicate annotation id " +
                                 std::to_string(annotation.id));
      }
      const CocoImage& image = images.Resolve(annotation.image_id);
      if (categories.count(annotation.category_id) == 0) {
        throw std::runtime_error("coco: annotation " + std::to_string(annotation.id) +
                                 " references missing category id " +
                                 std::to_string(annotation.category_id));
      }
      CheckMaskAgainstImage(annotation.mask, annotation.area, image,
                            "annotation " + std::to_string(annotation.id));
      document.annotations.push_back(std::move(annotation));
    }
  } catch (const json::exception& error) {
    throw std::runtime_error(std::string("coco: malformed instance document: ") + error.what());
  }
  return document;
}

PanopticDocument ParsePanopticDocument(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& error) {
    throw std::runtime_error(std::string("coco: not valid JSON: ") + error.what());
  }
  PanopticDocument document;
  try {
    document.images = ImagesFromJson(doc.at("images"));
    document.categories = CategoriesFromJson(doc.at("categories"));
    const ImageIndex images(document.images);
    const std::set<int> categories = CategoryIds(document.categories);
    std::set<int> annotated_images;
    for (const json& entry : doc.at("annotations")) {
      PanopticAnnotation annotation;
      annotation.image_id = entry.at("image_id").get<int>();
      annotation.file_name = entry.at("file_name").get<std::string>();
      const CocoImage& image = images.Resolve(annotation.image_id);
      if (!annotated_images.insert(annotation.image_id).second) {
        throw std::runtime_error("coco: image id " + std::to_string(annotation.image_id) +
                                 " has more than one panoptic annotation");
      }
      std::set<std::uint64_t> segment_ids;
      for (const json& seg : entry.at("segments_info")) {
        PanopticSegmentInfo info;
        info.id = seg.at("id").get<std::uint64_t>();
        info.category_id = seg.at("category_id").get<int>();
        info.bbox = BoxFromJson(seg.at("bbox"));
        info.area = seg.at("area").get<std::int64_t>();
        info.mask = MaskFromJson(seg.at("segmentation"));
        if (seg.contains("score")) {
          info.score = seg.at("score").get<double>();
        }
        if (!segment_ids.insert(info.id).second) {
          throw std::runtime_error("coco: duplicate segment id " + std::to_string(info.id) +
                                   " in image " + std::to_string(annotation.image_id));
        }
        if (categories.count(info.category_id) == 0) {
          throw std::runtime_error("coco: segment " + std::to_string(info.id) +
                                   " references missing category id " +
                                   std::to_string(info.category_id));
        }
        CheckMaskAgainstImage(info.mask, info.area, image,
                              "segment " + std::to_string(info.id));
        annotation.segments_info.push_back(std::move(info));
      }
      document.annotations.push_back(std::move(annotation));
    }
  } catch (const json::exception& error) {
    throw std::runtime_error(std::string("coco: malformed panoptic document: ") + error.what());
  }
  return document;
}

}  // namespace panoptica

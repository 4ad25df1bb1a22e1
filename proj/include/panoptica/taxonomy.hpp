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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "panoptica/image.hpp"

namespace panoptica {

enum class CategoryKind { kThing, kStuff };

struct SemanticCategory {
  int index = 0;           // contiguous, assigned by document order
  std::string name;
  Rgb8 color;              // never (0,0,0); black is reserved for unlabeled
  CategoryKind kind = CategoryKind::kStuff;
  std::int64_t instance_count = 0;  // optional statistics column, 0 when absent

  friend bool operator==(const SemanticCategory&, const SemanticCategory&) = default;
};

/// The category palette shared by every stage: names, colors, thing/stuff
/// kinds, and all color<->category<->ordinal mappings. Immutable after load
/// and safe to share across worker threads.
class Taxonomy {
 public:
  Taxonomy() = default;

  /// Parses the plain-text taxonomy document (see docs/formats.md):
  /// one `name r g b kind [count]` record per line, `#` comments.
  /// Throws std::runtime_error on duplicate names/colors, black colors,
  /// or malformed records.
  static Taxonomy Parse(std::string_view text);
  static Taxonomy Load(const std::filesystem::path& path);

  /// Emits the document form; Parse(Emit()) reproduces the taxonomy.
  std::string Emit() const;

  const std::vector<SemanticCategory>& categories() const { return categories_; }
  int size() const { return static_cast<int>(categories_.size()); }
  const SemanticCategory& category(int index) const { return categories_.at(index); }

  /// Exact palette lookup. Black and off-palette colors mean "unlabeled"
  /// and return nullopt.
  std::optional<int> CategoryFromColor(Rgb8 color) const;
  std::optional<int> CategoryFromName(std::string_view name) const;

  bool IsThing(int index) const { return category(index).kind == CategoryKind::kThing; }

  /// 1-based ordinal of a stuff category among stuff categories in document
  /// order; 0 for things. Ordinal 0 is never used for stuff and 255 is
  /// reserved for unlabeled pixels, which caps the stuff count at 254.
  int StuffOrdinal(int index) const { return stuff_ordinals_.at(index); }
  int stuff_count() const { return stuff_count_; }
  int thing_count() const { return size() - stuff_count_; }

  std::vector<int> ThingIndices() const;
  std::vector<int> StuffIndices() const;

 private:
  std::vector<SemanticCategory> categories_;
  std::unordered_map<std::uint32_t, int> by_color_;
  std::unordered_map<std::string, int> by_name_;
  std::vector<int> stuff_ordinals_;
  int stuff_count_ = 0;
};

}  // namespace panoptica

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

#include "panoptica/taxonomy.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace panoptica {
namespace {

[[noreturn]] void ParseFail(int line_number, const std::string& what) {
  throw std::runtime_error("taxonomy: line " + std::to_string(line_number) + ": " + what);
}

int ParseChannel(int line_number, const std::string& token) {
  int value = 0;
  try {
    std::size_t pos = 0;
    value = std::stoi(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
  } catch (const std::exception&) {
    ParseFail(line_number, "bad color channel '" + token + "'");
  }
  if (value < 0 || value > 255) ParseFail(line_number, "color channel out of range: " + token);
  return value;
}

}  // namespace

Taxonomy Taxonomy::Parse(std::string_view text) {
  Taxonomy taxonomy;
  std::istringstream stream{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const std::size_t comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    std::istringstream fields(line);
    std::string name, r, g, b, kind_token;
    if (!(fields >> name)) continue;  // blank line
    if (!(fields >> r >> g >> b >> kind_token)) {
      ParseFail(line_number, "expected 'name r g b kind [count]'");
    }
    SemanticCategory category;
    category.index = static_cast<int>(taxonomy.categories_.size());
    category.name = name;
    category.color = Rgb8{static_cast<std::uint8_t>(ParseChannel(line_number, r)),
                          static_cast<std::uint8_t>(ParseChannel(line_number, g)),
                          static_cast<std::uint8_t>(ParseChannel(line_number, b))};
    if (kind_token == "thing") {
      category.kind = CategoryKind::kThing;
    } else if (kind_token == "stuff") {
      category.kind = CategoryKind::kStuff;
    } else {
      ParseFail(line_number, "kind must be 'thing' or 'stuff', got '" + kind_token + "'");
    }
    std::string count_token;
    if (fields >> count_token) {
      try {
        category.instance_count = std::stoll(count_token);
      } catch (const std::exception&) {
        ParseFail(line_number, "bad count '" + count_token + "'");
      }
      std::string extra;
      if (fields >> extra) ParseFail(line_number, "unexpected trailing field '" + extra + "'");
    }

    if (category.color == kBlack) {
      ParseFail(line_number, "black is reserved for unlabeled pixels");
    }
    if (!taxonomy.by_color_.emplace(PackColor(category.color), category.index).second) {
      ParseFail(line_number, "duplicate color for '" + category.name + "'");
    }
    if (!taxonomy.by_name_.emplace(category.name, category.index).second) {
      ParseFail(line_number, "duplicate name '" + category.name + "'");
    }
    taxonomy.categories_.push_back(std::move(category));
  }
  if (taxonomy.categories_.empty()) {
    throw std::runtime_error("taxonomy: document defines no categories");
  }

  taxonomy.stuff_ordinals_.assign(taxonomy.categories_.size(), 0);
  for (const SemanticCategory& category : taxonomy.categories_) {
    if (category.kind == CategoryKind::kStuff) {
      taxonomy.stuff_ordinals_[category.index] = ++taxonomy.stuff_count_;
    }
  }
  return taxonomy;
}

Taxonomy Taxonomy::Load(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("taxonomy: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return Parse(buffer.str());
}

std::string Taxonomy::Emit() const {
  std::ostringstream out;
  out << "# name r g b kind [count]\n";
  for (const SemanticCategory& category : categories_) {
    out << category.name << ' ' << int(category.color.r) << ' ' << int(category.color.g) << ' '
        << int(category.color.b) << ' '
        << (category.kind == CategoryKind::kThing ? "thing" : "stuff");
    if (category.instance_count != 0) out << ' ' << category.instance_count;
    out << '\n';
  }
  return out.str();
}

std::optional<int> Taxonomy::CategoryFromColor(Rgb8 color) const {
  const auto it = by_color_.find(PackColor(color));
  if (it == by_color_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Taxonomy::CategoryFromName(std::string_view name) const {
  const auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> Taxonomy::ThingIndices() const {
  std::vector<int> indices;
  for (const SemanticCategory& category : categories_) {
    if (category.kind == CategoryKind::kThing) indices.push_back(category.index);
  }
  return indices;
}

std::vector<int> Taxonomy::StuffIndices() const {
  std::vector<int> indices;
  for (const SemanticCategory& category : categories_) {
    if (category.kind == CategoryKind::kStuff) indices.push_back(category.index);
  }
  return indices;
}

}  // namespace panoptica

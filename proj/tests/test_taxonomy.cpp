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

#include <stdexcept>

#include "doctest.h"
#include "test_util.hpp"

namespace panoptica {
namespace {

constexpr const char* kSmallDocument =
    "# test palette\n"
    "wall 190 190 190 stuff\n"
    "floor 120 90 60 stuff\n"
    "screwdriver 30 60 200 thing 4\n"
    "hammer 220 160 30 thing\n";

TEST_SUITE("taxonomy") {

TEST_CASE("parse assigns indices by document order") {
  const Taxonomy taxonomy = Taxonomy::Parse(kSmallDocument);
  REQUIRE(taxonomy.size() == 4);
  CHECK(taxonomy.category(0).name == "wall");
  CHECK(taxonomy.category(1).name == "floor");
  CHECK(taxonomy.category(2).name == "screwdriver");
  CHECK(taxonomy.category(3).name == "hammer");
  CHECK(taxonomy.category(2).color == Rgb8{30, 60, 200});
  CHECK(taxonomy.category(2).kind == CategoryKind::kThing);
  CHECK(taxonomy.category(2).instance_count == 4);
  CHECK(taxonomy.category(3).instance_count == 0);
  CHECK(taxonomy.stuff_count() == 2);
  CHECK(taxonomy.thing_count() == 2);
}

TEST_CASE("single stuff category parses to a size-1 taxonomy") {
  const Taxonomy taxonomy = Taxonomy::Parse("floor 1 2 3 stuff\n");
  REQUIRE(taxonomy.size() == 1);
  CHECK(taxonomy.category(0).color == Rgb8{1, 2, 3});
  CHECK(taxonomy.category(0).kind == CategoryKind::kStuff);
}

TEST_CASE("color lookup is a bijection over the palette") {
  const Taxonomy taxonomy = Taxonomy::Parse(kSmallDocument);
  for (const SemanticCategory& category : taxonomy.categories()) {
    REQUIRE(taxonomy.CategoryFromColor(category.color) == category.index);
  }
}

TEST_CASE("black and off-palette colors resolve to unlabeled") {
  const Taxonomy taxonomy = Taxonomy::Parse(kSmallDocument);
  CHECK(!taxonomy.CategoryFromColor(kBlack).has_value());
  CHECK(!taxonomy.CategoryFromColor(Rgb8{1, 1, 1}).has_value());
}

TEST_CASE("name lookup") {
  const Taxonomy taxonomy = Taxonomy::Parse(kSmallDocument);
  CHECK(taxonomy.CategoryFromName("hammer") == 3);
  CHECK(!taxonomy.CategoryFromName("anvil").has_value());
}

TEST_CASE("stuff ordinals are 1-based in document order, 0 for things") {
  const Taxonomy taxonomy = Taxonomy::Parse(kSmallDocument);
  CHECK(taxonomy.StuffOrdinal(0) == 1);
  CHECK(taxonomy.StuffOrdinal(1) == 2);
  CHECK(taxonomy.StuffOrdinal(2) == 0);
  CHECK(taxonomy.StuffOrdinal(3) == 0);
}

TEST_CASE("thing and stuff index lists partition the palette") {
  const Taxonomy taxonomy = Taxonomy::Parse(kSmallDocument);
  CHECK(taxonomy.StuffIndices() == std::vector<int>{0, 1});
  CHECK(taxonomy.ThingIndices() == std::vector<int>{2, 3});
}

TEST_CASE("emit then parse reproduces the taxonomy") {
  const Taxonomy original = Taxonomy::Parse(kSmallDocument);
  const Taxonomy reparsed = Taxonomy::Parse(original.Emit());
  REQUIRE(reparsed.size() == original.size());
  for (int i = 0; i < original.size(); ++i) {
    CHECK(reparsed.category(i) == original.category(i));
  }
}

TEST_CASE("duplicate color is rejected") {
  CHECK_THROWS_AS(Taxonomy::Parse("a 10 10 10 stuff\nb 10 10 10 thing\n"), std::runtime_error);
}

TEST_CASE("duplicate name is rejected") {
  CHECK_THROWS_AS(Taxonomy::Parse("a 1 2 3 stuff\na 4 5 6 thing\n"), std::runtime_error);
}

TEST_CASE("black palette color is rejected") {
  CHECK_THROWS_AS(Taxonomy::Parse("a 0 0 0 stuff\n"), std::runtime_error);
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS_AS(Taxonomy::Parse("a 1 2 stuff\n"), std::runtime_error);
  CHECK_THROWS_AS(Taxonomy::Parse("a 1 2 300 stuff\n"), std::runtime_error);
  CHECK_THROWS_AS(Taxonomy::Parse("a 1 2 -3 stuff\n"), std::runtime_error);
  CHECK_THROWS_AS(Taxonomy::Parse("a 1 2 3 solid\n"), std::runtime_error);
  CHECK_THROWS_AS(Taxonomy::Parse("a 1 2 3 stuff four\n"), std::runtime_error);
  CHECK_THROWS_AS(Taxonomy::Parse("a 1 2 3 stuff 4 5\n"), std::runtime_error);
}

TEST_CASE("empty document is rejected") {
  CHECK_THROWS_AS(Taxonomy::Parse(""), std::runtime_error);
  CHECK_THROWS_AS(Taxonomy::Parse("# only a comment\n"), std::runtime_error);
}

TEST_CASE("comments and blank lines are ignored") {
  const Taxonomy taxonomy = Taxonomy::Parse("\n# header\nfloor 1 2 3 stuff  # trailing\n\n");
  CHECK(taxonomy.size() == 1);
}

TEST_CASE("load reads a document from disk") {
  testing::ScratchDir dir;
  testing::WriteTextFile(dir.file("palette.txt"), kSmallDocument);
  const Taxonomy taxonomy = Taxonomy::Load(dir.file("palette.txt"));
  CHECK(taxonomy.size() == 4);
  CHECK_THROWS_AS(Taxonomy::Load(dir.file("missing.txt")), std::runtime_error);
}

TEST_CASE("shipped worksite palette has 35 distinct categories") {
  const Taxonomy taxonomy = Taxonomy::Load(testing::AssetsDir() / "miniworksite/taxonomy.txt");
  CHECK(taxonomy.size() == 35);
  CHECK(taxonomy.stuff_count() == 10);
  CHECK(taxonomy.thing_count() == 25);
  for (const SemanticCategory& category : taxonomy.categories()) {
    REQUIRE(taxonomy.CategoryFromColor(category.color) == category.index);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace panoptica

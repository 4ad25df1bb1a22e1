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

#include "panoptica/scene.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "panoptica/rng.hpp"
#include "test_util.hpp"

namespace panoptica {
namespace {

using testing::AssetsDir;
using testing::ScratchDir;
using testing::WriteTextFile;

MovableObject DiscObject(std::string id, double footprint_radius, double base_offset = 0.0) {
  MovableObject object;
  object.id = std::move(id);
  object.footprint_radius = footprint_radius;
  object.base_offset = base_offset;
  return object;
}

SurfaceRegion UnitRegion(double height = 0.0) {
  SurfaceRegion region;
  region.rect = Rect2{0.0, 0.0, 1.0, 1.0};
  region.height = height;
  return region;
}

bool CirclesDisjoint(const Placement& a, double ra, const Placement& b, double rb) {
  const double dx = a.position.x() - b.position.x();
  const double dy = a.position.y() - b.position.y();
  return std::sqrt(dx * dx + dy * dy) >= ra + rb - 1e-12;
}

TEST_SUITE("scene") {

TEST_CASE("empty object list places nothing") {
  Rng rng(7);
  const PlacementResult result = PlaceMovables(UnitRegion(), {}, rng);
  CHECK(result.placements.empty());
  CHECK(result.skipped.empty());
}

TEST_CASE("single small object always fits the region") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const PlacementResult result =
        PlaceMovables(UnitRegion(0.875), {DiscObject("probe", 0.1, 0.125)}, rng);
    REQUIRE(result.placements.size() == 1);
    CHECK(result.skipped.empty());
    const Placement& p = result.placements[0];
    CHECK(p.id == "probe");
    CHECK(p.object_index == 0);
    CHECK(p.position.x() >= 0.1);
    CHECK(p.position.x() <= 0.9);
    CHECK(p.position.y() >= 0.1);
    CHECK(p.position.y() <= 0.9);
    CHECK(p.position.z() == 1.0);
    CHECK(p.yaw >= 0.0);
    CHECK(p.yaw < 2.0 * std::numbers::pi);
  }
}

TEST_CASE("two wide footprints on a unit region can never coexist") {
  // Centers are confined to a 0.2 m square, so the 0.8 m separation the
  // footprints demand is geometrically impossible; the second object must be
  // skipped every time, and whatever was placed passes the overlap check.
  const std::vector<MovableObject> objects = {DiscObject("first", 0.4),
                                              DiscObject("second", 0.4)};
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const PlacementResult result = PlaceMovables(UnitRegion(), objects, rng);
    for (std::size_t i = 0; i < result.placements.size(); ++i) {
      for (std::size_t j = i + 1; j < result.placements.size(); ++j) {
        CHECK(CirclesDisjoint(result.placements[i], 0.4, result.placements[j], 0.4));
      }
    }
    REQUIRE(result.placements.size() == 1);
    REQUIRE(result.skipped == std::vector<std::string>{"second"});
  }
}

TEST_CASE("placements stay disjoint and contained across random loads") {
  SurfaceRegion region;
  region.rect = Rect2{-1.0, 0.5, 1.0, 2.5};
  region.height = 0.8;

  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng setup(seed * 977 + 13);
    std::vector<MovableObject> objects;
    std::vector<double> radii;
    for (int i = 0; i < 5; ++i) {
      const double radius = setup.Uniform(0.05, 0.35);
      objects.push_back(DiscObject("object_" + std::to_string(i), radius, 0.01 * i));
      radii.push_back(radius);
    }

    Rng rng(seed);
    const PlacementResult result = PlaceMovables(region, objects, rng);

    std::set<std::string> seen;
    for (const Placement& p : result.placements) seen.insert(p.id);
    for (const std::string& id : result.skipped) {
      CHECK(seen.insert(id).second);  // skipped ids are not also placed
    }
    CHECK(seen.size() == objects.size());

    for (std::size_t i = 0; i < result.placements.size(); ++i) {
      const Placement& p = result.placements[i];
      const double r = radii[static_cast<std::size_t>(p.object_index)];
      CHECK(p.position.x() >= region.rect.x_min + r);
      CHECK(p.position.x() <= region.rect.x_max - r);
      CHECK(p.position.y() >= region.rect.y_min + r);
      CHECK(p.position.y() <= region.rect.y_max - r);
      CHECK(p.position.z() ==
            region.height + objects[static_cast<std::size_t>(p.object_index)].base_offset);
      for (std::size_t j = i + 1; j < result.placements.size(); ++j) {
        const Placement& q = result.placements[j];
        CHECK(CirclesDisjoint(p, r, q, radii[static_cast<std::size_t>(q.object_index)]));
      }
    }
  }
}

TEST_CASE("identical seeds reproduce placements bit for bit") {
  const std::vector<MovableObject> objects = {DiscObject("a", 0.12), DiscObject("b", 0.2),
                                              DiscObject("c", 0.07)};
  Rng rng1(42), rng2(42);
  const PlacementResult r1 = PlaceMovables(UnitRegion(0.9), objects, rng1);
  const PlacementResult r2 = PlaceMovables(UnitRegion(0.9), objects, rng2);
  REQUIRE(r1.placements.size() == r2.placements.size());
  for (std::size_t i = 0; i < r1.placements.size(); ++i) {
    CHECK(r1.placements[i].position.x() == r2.placements[i].position.x());
    CHECK(r1.placements[i].position.y() == r2.placements[i].position.y());
    CHECK(r1.placements[i].position.z() == r2.placements[i].position.z());
    CHECK(r1.placements[i].yaw == r2.placements[i].yaw);
  }
  CHECK(r1.skipped == r2.skipped);
}

TEST_CASE("footprint wider than the region is skipped without sampling") {
  Rng rng(3);
  const PlacementResult result = PlaceMovables(UnitRegion(), {DiscObject("barrel", 0.6)}, rng);
  CHECK(result.placements.empty());
  REQUIRE(result.skipped == std::vector<std::string>{"barrel"});
}

TEST_CASE("invalid region is rejected") {
  SurfaceRegion region;
  region.rect = Rect2{1.0, 0.0, 1.0, 1.0};  // zero width
  Rng rng(1);
  CHECK_THROWS_AS(PlaceMovables(region, {DiscObject("x", 0.1)}, rng), std::invalid_argument);
}

TEST_CASE("placement transform rotates about z then translates") {
  Placement p;
  p.position = Vec3(1.0, 2.0, 3.0);
  p.yaw = std::numbers::pi / 2.0;
  const Vec3 world = p.ToWorld(Vec3(1.0, 0.0, 0.5));
  CHECK(world.x() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(world.y() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(world.z() == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("workshop fixture descriptor loads fully") {
  const SceneDescription scene = LoadSceneDescription(AssetsDir() / "miniworksite" / "scene.json");
  CHECK(scene.taxonomy.size() == 35);
  CHECK_FALSE(scene.static_mesh.faces.empty());
  CHECK(scene.static_mesh_stats.unlabeled_faces == 0);
  CHECK(scene.static_mesh_stats.degenerate_dropped == 0);
  REQUIRE(scene.movables.size() == 3);
  CHECK(scene.movables[0].id == "oscilloscope_a");
  CHECK(scene.movables[1].id == "screwdriver_a");
  CHECK(scene.movables[2].id == "power_supply_a");
  for (const MovableObject& object : scene.movables) {
    CHECK(object.footprint_radius > 0.0);
  }
  CHECK(scene.workbench.height == 0.9);
  CHECK(scene.workbench.rect.IsValid());
  REQUIRE(scene.free_space.size() == 4);
  for (const Rect2& rect : scene.free_space) CHECK(rect.IsValid());
}

TEST_CASE("fixture movables fit the fixture workbench") {
  const SceneDescription scene = LoadSceneDescription(AssetsDir() / "miniworksite" / "scene.json");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const PlacementResult result = PlaceMovables(scene.workbench, scene.movables, rng);
    CHECK(result.placements.size() == scene.movables.size());
    CHECK(result.skipped.empty());
  }
}

TEST_CASE("descriptor errors are reported with context") {
  ScratchDir dir;

  SUBCASE("missing file") {
    CHECK_THROWS_AS(LoadSceneDescription(dir.file("absent.json")), std::runtime_error);
  }
  SUBCASE("malformed json") {
    WriteTextFile(dir.file("scene.json"), "{not json");
    CHECK_THROWS_AS(LoadSceneDescription(dir.file("scene.json")), std::runtime_error);
  }
  SUBCASE("unsupported version") {
    WriteTextFile(dir.file("scene.json"), R"({"version": 2})");
    CHECK_THROWS_AS(LoadSceneDescription(dir.file("scene.json")), std::runtime_error);
  }
  SUBCASE("degenerate workbench rectangle") {
    WriteTextFile(dir.file("taxonomy.txt"), "floor 120 90 60 stuff\n");
    WriteTextFile(dir.file("box.mtl"), "newmtl m\nKd 0.47058824 0.35294118 0.23529412\n");
    WriteTextFile(dir.file("box.obj"),
                  "mtllib box.mtl\nusemtl m\n"
                  "v 0 0 0\nv 1 0 0\nv 1 1 0\nf 1 2 3\n");
    WriteTextFile(dir.file("scene.json"), R"({
      "version": 1,
      "taxonomy": "taxonomy.txt",
      "static_mesh": "box.obj",
      "movables": [],
      "workbench": {"rect": [1.0, 0.0, 1.0, 2.0], "height": 0.9},
      "free_space": [[0.0, 0.0, 1.0, 1.0]]
    })");
    CHECK_THROWS_AS(LoadSceneDescription(dir.file("scene.json")), std::runtime_error);
  }
  SUBCASE("empty free space") {
    WriteTextFile(dir.file("taxonomy.txt"), "floor 120 90 60 stuff\n");
    WriteTextFile(dir.file("box.mtl"), "newmtl m\nKd 0.47058824 0.35294118 0.23529412\n");
    WriteTextFile(dir.file("box.obj"),
                  "mtllib box.mtl\nusemtl m\n"
                  "v 0 0 0\nv 1 0 0\nv 1 1 0\nf 1 2 3\n");
    WriteTextFile(dir.file("scene.json"), R"({
      "version": 1,
      "taxonomy": "taxonomy.txt",
      "static_mesh": "box.obj",
      "movables": [],
      "workbench": {"rect": [0.0, 0.0, 1.0, 2.0], "height": 0.9},
      "free_space": []
    })");
    CHECK_THROWS_AS(LoadSceneDescription(dir.file("scene.json")), std::runtime_error);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace panoptica

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

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace panoptica {

PlacementResult PlaceMovables(const SurfaceRegion& region,
                              const std::vector<MovableObject>& objects, Rng& rng,
                              int retry_budget) {
  if (!region.rect.IsValid()) throw std::invalid_argument("placement: invalid surface rectangle");
  PlacementResult result;
  for (int index = 0; index < static_cast<int>(objects.size()); ++index) {
    const MovableObject& object = objects[index];
    const double r = object.footprint_radius;
    const double x_lo = region.rect.x_min + r, x_hi = region.rect.x_max - r;
    const double y_lo = region.rect.y_min + r, y_hi = region.rect.y_max - r;
    if (x_lo > x_hi || y_lo > y_hi) {
      result.skipped.push_back(object.id);
      continue;
    }
    bool placed = false;
    for (int attempt = 0; attempt < retry_budget && !placed; ++attempt) {
      const double x = rng.Uniform(x_lo, x_hi);
      const double y = rng.Uniform(y_lo, y_hi);
      const double yaw = rng.UniformAngle();
      bool collides = false;
      for (const Placement& other : result.placements) {
        const double min_distance = r + objects[other.object_index].footprint_radius;
        const double dx = x - other.position.x();
        const double dy = y - other.position.y();
        if (dx * dx + dy * dy < min_distance * min_distance) {
          collides = true;
          break;
        }
      }
      if (!collides) {
        Placement placement;
        placement.object_index = index;
        placement.id = object.id;
        placement.position = Vec3(x, y, region.height + object.base_offset);
        placement.yaw = yaw;
        result.placements.push_back(placement);
        placed = true;
      }
    }
    if (!placed) result.skipped.push_back(object.id);
  }
  return result;
}

namespace {

using nlohmann::json;

Rect2 ParseRect(const json& array, const char* what) {
  if (!array.is_array() || array.size() != 4) {
    throw std::runtime_error(std::string("scene: ") + what + " must be [x_min, y_min, x_max, y_max]");
  }
  Rect2 rect{array[0].get<double>(), array[1].get<double>(), array[2].get<double>(),
             array[3].get<double>()};
  if (!rect.IsValid()) throw std::runtime_error(std::string("scene: ") + what + " has no extent");
  return rect;
}

}  // namespace

SceneDescription LoadSceneDescription(const std::filesystem::path& descriptor_path) {
  std::ifstream file(descriptor_path);
  if (!file) throw std::runtime_error("scene: cannot open " + descriptor_path.string());
  json doc;
  try {
    doc = json::parse(file);
  } catch (const json::parse_error& error) {
    throw std::runtime_error("scene: " + descriptor_path.string() + ": " + error.what());
  }
  if (doc.value("version", 0) != 1) {
    throw std::runtime_error("scene: unsupported descriptor version in " +
                             descriptor_path.string());
  }

  const std::filesystem::path base = descriptor_path.parent_path();
  SceneDescription scene;
  scene.taxonomy = Taxonomy::Load(base / doc.at("taxonomy").get<std::string>());
  scene.static_mesh = LoadObjMesh(base / doc.at("static_mesh").get<std::string>(),
                                  scene.taxonomy, &scene.static_mesh_stats);
  if (scene.static_mesh.faces.empty()) throw std::runtime_error("scene: static mesh has no faces");

  for (const json& entry : doc.at("movables")) {
    scene.movables.push_back(LoadMovableObject(entry.at("id").get<std::string>(),
                                               base / entry.at("mesh").get<std::string>(),
                                               scene.taxonomy));
  }

  const json& bench = doc.at("workbench");
  scene.workbench.rect = ParseRect(bench.at("rect"), "workbench rect");
  scene.workbench.height = bench.at("height").get<double>();

  for (const json& entry : doc.at("free_space")) {
    scene.free_space.push_back(ParseRect(entry, "free_space entry"));
  }
  if (scene.free_space.empty()) throw std::runtime_error("scene: free_space is empty");
  return scene;
}

}  // namespace panoptica

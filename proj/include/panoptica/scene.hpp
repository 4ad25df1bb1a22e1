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

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "panoptica/camera.hpp"
#include "panoptica/mesh.hpp"
#include "panoptica/rng.hpp"
#include "panoptica/taxonomy.hpp"

namespace panoptica {

/// Horizontal support surface (the workbench): footprint rectangle plus the
/// height objects rest on.
struct SurfaceRegion {
  Rect2 rect;
  double height = 0.0;
};

/// One placed movable object. `position` is the object origin in world
/// coordinates; the object's base sits on the surface, so
/// position.z() = surface height + base_offset.
struct Placement {
  int object_index = 0;  // into the movable list handed to PlaceMovables
  std::string id;
  Vec3 position = Vec3::Zero();
  double yaw = 0.0;

  /// Model-to-world transform: rotate by yaw about +z, then translate.
  Vec3 ToWorld(const Vec3& local) const {
    const double c = std::cos(yaw), s = std::sin(yaw);
    return Vec3(c * local.x() - s * local.y() + position.x(),
                s * local.x() + c * local.y() + position.y(), local.z() + position.z());
  }
};

struct PlacementResult {
  std::vector<Placement> placements;
  std::vector<std::string> skipped;  // ids that found no collision-free spot
};

/// Rejection-samples non-overlapping positions for the given objects on the
/// surface, in list order, with uniform yaw. Footprint circles must lie fully
/// inside the rectangle and be pairwise disjoint; objects still colliding
/// after `retry_budget` attempts are skipped and reported.
PlacementResult PlaceMovables(const SurfaceRegion& region,
                              const std::vector<MovableObject>& objects, Rng& rng,
                              int retry_budget = 100);

/// Everything the scene descriptor names, loaded and validated.
struct SceneDescription {
  Taxonomy taxonomy;
  LabeledMesh static_mesh;
  MeshLoadStats static_mesh_stats;
  std::vector<MovableObject> movables;
  SurfaceRegion workbench;
  std::vector<Rect2> free_space;
};

/// Loads a scene descriptor (JSON, see docs/formats.md); all paths inside are
/// resolved relative to the descriptor's directory.
SceneDescription LoadSceneDescription(const std::filesystem::path& descriptor_path);

}  // namespace panoptica

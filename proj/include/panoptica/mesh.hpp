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

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "panoptica/camera.hpp"
#include "panoptica/image.hpp"
#include "panoptica/taxonomy.hpp"

namespace panoptica {

inline constexpr int kUnlabeledCategory = -1;

struct Face {
  std::array<int, 3> vertices{};        // indices into LabeledMesh::vertices
  std::array<Vec2, 3> uv{};             // texel coordinates, used when textured
  int category = kUnlabeledCategory;    // palette index or kUnlabeledCategory
  int texture = -1;                     // index into LabeledMesh::textures, -1 = flat
  Rgb8 flat_color;                      // appearance when untextured
  int component = -1;                   // thing-connectivity component, -1 for stuff/unlabeled
};

/// Triangle mesh with a category and an appearance source per face.
/// Immutable after load; shareable across worker threads.
struct LabeledMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<RgbImage> textures;
  int thing_component_count = 0;

  /// Per-category face counts, indexed by category; last slot counts
  /// unlabeled faces.
  std::vector<int> FaceCountsByCategory(const Taxonomy& taxonomy) const;
};

struct MeshLoadStats {
  int unlabeled_faces = 0;       // faces whose material color is off-palette
  int degenerate_dropped = 0;    // zero-area faces removed at load
};

/// Loads a Wavefront OBJ (v/vt/f + mtllib/usemtl). Face categories come from
/// matching each material's diffuse color against the palette; off-palette
/// materials leave faces unlabeled. map_Kd textures (PNG) are loaded for the
/// RGB appearance pass. Throws on unreadable files and out-of-range vertex
/// references.
LabeledMesh LoadObjMesh(const std::filesystem::path& path, const Taxonomy& taxonomy,
                        MeshLoadStats* stats = nullptr);

/// Assigns thing-face components: faces of the same thing category joined
/// when they share a vertex. Called by LoadObjMesh; exposed for meshes built
/// in code.
void AssignThingComponents(LabeledMesh& mesh, const Taxonomy& taxonomy);

struct MovableObject {
  std::string id;
  LabeledMesh mesh;               // single thing category
  double footprint_radius = 0.0;  // max horizontal distance from origin, meters
  double base_offset = 0.0;       // origin height above the lowest point, meters
};

/// Loads a movable-object mesh and derives footprint_radius/base_offset from
/// its geometry. All faces must share one thing category.
MovableObject LoadMovableObject(const std::string& id, const std::filesystem::path& path,
                                const Taxonomy& taxonomy);

}  // namespace panoptica

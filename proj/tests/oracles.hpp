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

// Independent reference implementations the tests compare the library
// against. Deliberately brute-force: correctness over speed, and no code
// shared with the implementations under test.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "panoptica/camera.hpp"
#include "panoptica/mesh.hpp"
#include "panoptica/render.hpp"
#include "panoptica/scene.hpp"
#include "panoptica/taxonomy.hpp"

namespace panoptica::testing {

/// World-space triangle carrying the labels the renderer would attach,
/// listed in the renderer's submission order.
struct RaycastTriangle {
  std::array<Vec3, 3> corners;
  int category = 0;
  std::int32_t instance_id = 0;
};

/// Flattens the scene exactly as RenderFrame submits it: static faces first
/// (unlabeled skipped), then each placement's object faces. Instance ids use
/// the same scheme (movables 1..k, static thing components k+1..).
std::vector<RaycastTriangle> BuildRaycastTriangles(const LabeledMesh& static_mesh,
                                                   const Taxonomy& taxonomy,
                                                   const std::vector<MovableObject>& movables,
                                                   const std::vector<Placement>& placements);

struct RayHit {
  double depth = 0.0;  // camera-frame z of the hit, meters
  int category = 0;
  std::int32_t instance_id = 0;
};

/// Casts the ray through pixel center (x+0.5, y+0.5) against every triangle
/// (Moller-Trumbore, boundary-inclusive) and keeps the strictly nearest hit
/// with depth >= znear; earlier triangles win exact ties, mirroring the
/// renderer's first-written depth rule.
std::optional<RayHit> CastPixelRay(const std::vector<RaycastTriangle>& triangles,
                                   const CameraPose& pose, const CameraIntrinsics& intrinsics,
                                   int x, int y, double znear = kNearPlane);

/// Point-in-union check used as the tour containment oracle.
bool InsideAnyRect(const std::vector<Rect2>& rects, double x, double y);

}  // namespace panoptica::testing

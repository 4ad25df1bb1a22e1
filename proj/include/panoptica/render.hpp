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
#include <limits>
#include <vector>

#include "panoptica/camera.hpp"
#include "panoptica/image.hpp"
#include "panoptica/mesh.hpp"
#include "panoptica/scene.hpp"
#include "panoptica/taxonomy.hpp"

namespace panoptica {

inline constexpr double kNearPlane = 0.05;  // meters

/// The four aligned per-frame buffers. Every covered pixel carries the same
/// front-most face in all four; uncovered pixels are black / 0 / +infinity.
struct FrameSet {
  RgbImage rgb;
  RgbImage semantic;
  IndexImage instance;
  DepthImage depth;

  FrameSet() = default;
  FrameSet(int width, int height)
      : rgb(width, height),
        semantic(width, height),
        instance(width, height, 0),
        depth(width, height, std::numeric_limits<float>::infinity()) {}

  int width() const { return semantic.width(); }
  int height() const { return semantic.height(); }
};

/// Projected vertex handed to the rasterizer. Attributes are divided by
/// camera z up front so the rasterizer can interpolate them linearly in
/// screen space (perspective-correct recovery at each pixel).
struct ScreenVertex {
  double x = 0.0;        // pixel units, pixel centers at integer + 0.5
  double y = 0.0;
  double inv_z = 0.0;    // 1 / camera z
  double u_over_z = 0.0;
  double v_over_z = 0.0;
};

struct TriangleAttributes {
  Rgb8 semantic_color;
  Rgb8 flat_color;
  const RgbImage* texture = nullptr;  // nearest-texel, wrapped; null = flat
  std::int32_t instance_id = 0;
};

/// Fills pixels whose centers lie inside the triangle, top-left fill rule,
/// strictly-less depth test (ties keep the first-written face). Edge
/// functions are evaluated from a canonical per-undirected-edge anchor so
/// that triangles sharing an edge cover every boundary pixel exactly once.
void RasterizeTriangle(FrameSet& frame, const std::array<ScreenVertex, 3>& vertices,
                       const TriangleAttributes& attributes);

/// Camera-space vertex entering near-plane clipping.
struct ClipVertex {
  Vec3 position;  // camera frame, z forward
  Vec2 uv;
};

struct ClippedTriangles {
  std::array<std::array<ClipVertex, 3>, 2> triangles;
  int count = 0;
};

/// Sutherland-Hodgman clip of one triangle against z >= znear. Cut vertices
/// are computed from a direction-independent endpoint ordering so both faces
/// sharing an edge produce bit-identical cuts.
ClippedTriangles ClipTriangleToNearPlane(const std::array<ClipVertex, 3>& triangle, double znear);

/// Renders one frame: z-buffered rasterization of the static mesh plus the
/// placed movables. Instance ids: placed movables take 1..k in placement
/// order, static thing components follow at k+1...; stuff pixels stay 0.
/// Faces with an unlabeled category are skipped entirely, so covered pixels
/// always carry a palette color.
FrameSet RenderFrame(const LabeledMesh& static_mesh, const Taxonomy& taxonomy,
                     const std::vector<MovableObject>& movables,
                     const std::vector<Placement>& placements, const CameraPose& pose,
                     const CameraIntrinsics& intrinsics);

}  // namespace panoptica

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

#include "panoptica/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace panoptica {
namespace {

// One directed triangle edge backed by a canonical undirected evaluation.
//
// Adjacent triangles traverse their shared edge in opposite directions; had
// each evaluated its own edge function, rounding could let a boundary pixel
// land inside both triangles or neither. Anchoring the evaluation at the
// lexicographically smaller endpoint makes both triangles compute the exact
// same double, and the sign plus the top-left rule then assign every
// boundary pixel to exactly one of them.
struct Edge {
  double anchor_x, anchor_y;  // canonical anchor endpoint
  double dx, dy;              // canonical direction (anchor -> other)
  double sign;                // +1 when the directed edge matches the canonical one
  bool top_left;              // directed edge qualifies under the fill rule

  double Eval(double px, double py) const {
    return sign * (dx * (py - anchor_y) - dy * (px - anchor_x));
  }
};

Edge MakeEdge(const ScreenVertex& from, const ScreenVertex& to) {
  Edge edge;
  const bool forward = from.x < to.x || (from.x == to.x && from.y < to.y);
  const ScreenVertex& lo = forward ? from : to;
  const ScreenVertex& hi = forward ? to : from;
  edge.anchor_x = lo.x;
  edge.anchor_y = lo.y;
  edge.dx = hi.x - lo.x;
  edge.dy = hi.y - lo.y;
  edge.sign = forward ? 1.0 : -1.0;
  // Fill-rule classification uses the directed edge of the positively
  // oriented triangle: top edges run left-to-right along constant y, left
  // edges run upward (decreasing y).
  const double directed_dx = to.x - from.x;
  const double directed_dy = to.y - from.y;
  edge.top_left = (directed_dy == 0.0 && directed_dx > 0.0) || directed_dy < 0.0;
  return edge;
}

Rgb8 SampleTexture(const RgbImage& texture, double u, double v) {
  // Nearest texel, repeat wrapping; vt (0,0) addresses the top-left texel.
  const double wrapped_u = u - std::floor(u);
  const double wrapped_v = v - std::floor(v);
  const int x = std::min(static_cast<int>(wrapped_u * texture.width()), texture.width() - 1);
  const int y = std::min(static_cast<int>(wrapped_v * texture.height()), texture.height() - 1);
  return texture.at(x, y);
}

}  // namespace

void RasterizeTriangle(FrameSet& frame, const std::array<ScreenVertex, 3>& vertices,
                       const TriangleAttributes& attributes) {
  ScreenVertex v0 = vertices[0], v1 = vertices[1], v2 = vertices[2];
  const double area2 =
      (v1.x - v0.x) * (v2.y - v0.y) - (v1.y - v0.y) * (v2.x - v0.x);
  if (area2 == 0.0) return;
  if (area2 < 0.0) std::swap(v1, v2);

  const std::array<Edge, 3> edges = {MakeEdge(v1, v2), MakeEdge(v2, v0), MakeEdge(v0, v1)};

  const double min_x = std::min({v0.x, v1.x, v2.x});
  const double max_x = std::max({v0.x, v1.x, v2.x});
  const double min_y = std::min({v0.y, v1.y, v2.y});
  const double max_y = std::max({v0.y, v1.y, v2.y});
  const int x_begin = std::max(0, static_cast<int>(std::ceil(min_x - 0.5)));
  const int x_end = std::min(frame.width() - 1, static_cast<int>(std::floor(max_x - 0.5)));
  const int y_begin = std::max(0, static_cast<int>(std::ceil(min_y - 0.5)));
  const int y_end = std::min(frame.height() - 1, static_cast<int>(std::floor(max_y - 0.5)));

  for (int y = y_begin; y <= y_end; ++y) {
    const double py = y + 0.5;
    for (int x = x_begin; x <= x_end; ++x) {
      const double px = x + 0.5;
      // edges[i] is opposite vertex i, so w_i weights vertex i directly.
      double w[3];
      bool inside = true;
      for (int i = 0; i < 3 && inside; ++i) {
        w[i] = edges[i].Eval(px, py);
        inside = w[i] > 0.0 || (w[i] == 0.0 && edges[i].top_left);
      }
      if (!inside) continue;

      const double w_sum = w[0] + w[1] + w[2];
      const double inv_z = (w[0] * v0.inv_z + w[1] * v1.inv_z + w[2] * v2.inv_z) / w_sum;
      const float depth = static_cast<float>(1.0 / inv_z);
      if (!(depth < frame.depth.at(x, y))) continue;

      frame.depth.at(x, y) = depth;
      frame.semantic.at(x, y) = attributes.semantic_color;
      frame.instance.at(x, y) = attributes.instance_id;
      if (attributes.texture != nullptr) {
        const double u =
            (w[0] * v0.u_over_z + w[1] * v1.u_over_z + w[2] * v2.u_over_z) / (w_sum * inv_z);
        const double v =
            (w[0] * v0.v_over_z + w[1] * v1.v_over_z + w[2] * v2.v_over_z) / (w_sum * inv_z);
        frame.rgb.at(x, y) = SampleTexture(*attributes.texture, u, v);
      } else {
        frame.rgb.at(x, y) = attributes.flat_color;
      }
    }
  }
}

ClippedTriangles ClipTriangleToNearPlane(const std::array<ClipVertex, 3>& triangle, double znear) {
  std::array<ClipVertex, 4> polygon;
  int polygon_size = 0;

  for (int i = 0; i < 3; ++i) {
    const ClipVertex& a = triangle[i];
    const ClipVertex& b = triangle[(i + 1) % 3];
    const bool a_in = a.position.z() >= znear;
    const bool b_in = b.position.z() >= znear;
    if (a_in) polygon[polygon_size++] = a;
    if (a_in != b_in) {
      // Canonical endpoint order keeps the cut bit-identical for the
      // adjacent face that walks this edge in the other direction.
      const Vec3& pa = a.position;
      const Vec3& pb = b.position;
      const bool forward =
          pa.x() < pb.x() || (pa.x() == pb.x() && (pa.y() < pb.y() ||
                                                   (pa.y() == pb.y() && pa.z() < pb.z())));
      const ClipVertex& lo = forward ? a : b;
      const ClipVertex& hi = forward ? b : a;
      const double t = (znear - lo.position.z()) / (hi.position.z() - lo.position.z());
      ClipVertex cut;
      cut.position = Vec3(lo.position.x() + t * (hi.position.x() - lo.position.x()),
                          lo.position.y() + t * (hi.position.y() - lo.position.y()), znear);
      cut.uv = lo.uv + t * (hi.uv - lo.uv);
      polygon[polygon_size++] = cut;
    }
  }

  ClippedTriangles result;
  if (polygon_size >= 3) {
    result.triangles[result.count++] = {polygon[0], polygon[1], polygon[2]};
  }
  if (polygon_size == 4) {
    result.triangles[result.count++] = {polygon[0], polygon[2], polygon[3]};
  }
  return result;
}

namespace {

ScreenVertex ProjectClipVertex(const ClipVertex& vertex, const CameraIntrinsics& intrinsics) {
  ScreenVertex out;
  const double inv_z = 1.0 / vertex.position.z();
  out.x = intrinsics.cx + intrinsics.fx * vertex.position.x() * inv_z;
  out.y = intrinsics.cy + intrinsics.fy * vertex.position.y() * inv_z;
  out.inv_z = inv_z;
  out.u_over_z = vertex.uv.x() * inv_z;
  out.v_over_z = vertex.uv.y() * inv_z;
  return out;
}

void DrawMesh(FrameSet& frame, const LabeledMesh& mesh, const std::vector<Vec3>& camera_vertices,
              const Taxonomy& taxonomy, const CameraIntrinsics& intrinsics,
              std::int32_t fixed_instance_id, std::int32_t component_id_base) {
  for (const Face& face : mesh.faces) {
    if (face.category == kUnlabeledCategory) continue;

    std::array<ClipVertex, 3> corners;
    for (int i = 0; i < 3; ++i) {
      corners[i].position = camera_vertices[face.vertices[i]];
      corners[i].uv = face.uv[i];
    }
    const ClippedTriangles clipped = ClipTriangleToNearPlane(corners, kNearPlane);
    if (clipped.count == 0) continue;

    TriangleAttributes attributes;
    attributes.semantic_color = taxonomy.category(face.category).color;
    attributes.flat_color = face.flat_color;
    attributes.texture =
        face.texture >= 0 ? &mesh.textures[static_cast<std::size_t>(face.texture)] : nullptr;
    if (taxonomy.IsThing(face.category)) {
      attributes.instance_id =
          fixed_instance_id > 0 ? fixed_instance_id : component_id_base + face.component;
    } else {
      attributes.instance_id = 0;
    }

    for (int t = 0; t < clipped.count; ++t) {
      std::array<ScreenVertex, 3> screen;
      for (int i = 0; i < 3; ++i) {
        screen[i] = ProjectClipVertex(clipped.triangles[t][i], intrinsics);
      }
      RasterizeTriangle(frame, screen, attributes);
    }
  }
}

}  // namespace

FrameSet RenderFrame(const LabeledMesh& static_mesh, const Taxonomy& taxonomy,
                     const std::vector<MovableObject>& movables,
                     const std::vector<Placement>& placements, const CameraPose& pose,
                     const CameraIntrinsics& intrinsics) {
  intrinsics.Validate();
  FrameSet frame(intrinsics.width, intrinsics.height);

  std::vector<Vec3> camera_vertices(static_mesh.vertices.size());
  for (std::size_t i = 0; i < static_mesh.vertices.size(); ++i) {
    camera_vertices[i] = pose.WorldToCamera(static_mesh.vertices[i]);
  }
  const std::int32_t static_id_base = static_cast<std::int32_t>(placements.size()) + 1;
  DrawMesh(frame, static_mesh, camera_vertices, taxonomy, intrinsics, 0, static_id_base);

  for (std::size_t p = 0; p < placements.size(); ++p) {
    const Placement& placement = placements[p];
    const MovableObject& object = movables.at(placement.object_index);
    camera_vertices.resize(object.mesh.vertices.size());
    for (std::size_t i = 0; i < object.mesh.vertices.size(); ++i) {
      camera_vertices[i] = pose.WorldToCamera(placement.ToWorld(object.mesh.vertices[i]));
    }
    DrawMesh(frame, object.mesh, camera_vertices, taxonomy, intrinsics,
             static_cast<std::int32_t>(p) + 1, 0);
  }
  return frame;
}

}  // namespace panoptica

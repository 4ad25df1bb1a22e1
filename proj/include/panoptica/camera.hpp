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

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <optional>

namespace panoptica {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

// Conventions, fixed project-wide:
//   world: x/y horizontal, z up, floor at z = 0, units in meters;
//   camera: x right, y down, z forward;
//   image: origin top-left, x right, y down, pixel centers at integer + 0.5.

struct CameraIntrinsics {
  int width = 1280;
  int height = 720;
  double fx = 1000.0;
  double fy = 1000.0;
  double cx = 640.0;
  double cy = 360.0;

  /// Intrinsics with the default focal length and a centered principal point.
  static CameraIntrinsics Default(int width = 1280, int height = 720) {
    CameraIntrinsics k;
    k.width = width;
    k.height = height;
    k.cx = width / 2.0;
    k.cy = height / 2.0;
    return k;
  }

  void Validate() const;
};

struct CameraPose {
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();  // world-to-camera rotation

  Vec3 WorldToCamera(const Vec3& world_point) const {
    return orientation * (world_point - position);
  }

  /// Pose at `position` looking with the given yaw (about world +z, 0 along
  /// +x) and pitch (positive looks up), zero roll.
  static CameraPose FromYawPitch(const Vec3& position, double yaw, double pitch);
};

struct PixelProjection {
  double x = 0.0;
  double y = 0.0;
  double depth = 0.0;  // camera-frame z, meters
};

/// Pinhole projection; nullopt when the point is at or behind the camera
/// plane. The rasterizer uses this same transform path for its vertices.
std::optional<PixelProjection> Project(const CameraIntrinsics& intrinsics, const CameraPose& pose,
                                       const Vec3& world_point);

/// Axis-aligned rectangle in a horizontal plane.
struct Rect2 {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool Contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
  bool IsValid() const { return x_max > x_min && y_max > y_min; }
};

}  // namespace panoptica

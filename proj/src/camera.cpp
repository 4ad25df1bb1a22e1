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

#include "panoptica/camera.hpp"

#include <cmath>
#include <stdexcept>

namespace panoptica {

void CameraIntrinsics::Validate() const {
  if (width <= 0 || height <= 0) throw std::invalid_argument("intrinsics: non-positive image size");
  if (fx <= 0.0 || fy <= 0.0) throw std::invalid_argument("intrinsics: non-positive focal length");
}

CameraPose CameraPose::FromYawPitch(const Vec3& position, double yaw, double pitch) {
  const Vec3 forward(std::cos(yaw) * std::cos(pitch), std::sin(yaw) * std::cos(pitch),
                     std::sin(pitch));
  const Vec3 world_up = Vec3::UnitZ();
  const Vec3 right = forward.cross(world_up).normalized();
  const Vec3 down = forward.cross(right);

  Eigen::Matrix3d world_to_camera;
  world_to_camera.row(0) = right;
  world_to_camera.row(1) = down;
  world_to_camera.row(2) = forward;

  CameraPose pose;
  pose.position = position;
  pose.orientation = Quat(world_to_camera).normalized();
  return pose;
}

std::optional<PixelProjection> Project(const CameraIntrinsics& intrinsics, const CameraPose& pose,
                                       const Vec3& world_point) {
  const Vec3 camera_point = pose.WorldToCamera(world_point);
  if (camera_point.z() <= 0.0) return std::nullopt;
  PixelProjection projection;
  projection.x = intrinsics.cx + intrinsics.fx * (camera_point.x() / camera_point.z());
  projection.y = intrinsics.cy + intrinsics.fy * (camera_point.y() / camera_point.z());
  projection.depth = camera_point.z();
  return projection;
}

}  // namespace panoptica

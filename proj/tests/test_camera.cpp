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

#include "doctest.h"

namespace panoptica {
namespace {

TEST_SUITE("camera") {

TEST_CASE("default intrinsics are 1280x720 with a centered principal point") {
  const CameraIntrinsics k = CameraIntrinsics::Default();
  CHECK(k.width == 1280);
  CHECK(k.height == 720);
  CHECK(k.cx == doctest::Approx(640.0));
  CHECK(k.cy == doctest::Approx(360.0));
  CHECK_NOTHROW(k.Validate());
}

TEST_CASE("intrinsics validation rejects non-positive sizes and focals") {
  CameraIntrinsics k = CameraIntrinsics::Default();
  k.width = 0;
  CHECK_THROWS_AS(k.Validate(), std::invalid_argument);
  k = CameraIntrinsics::Default();
  k.fx = 0.0;
  CHECK_THROWS_AS(k.Validate(), std::invalid_argument);
}

TEST_CASE("point one meter ahead of an identity pose lands on the principal point") {
  // Identity orientation maps world axes onto camera axes, so world +z is
  // the camera's forward axis here.
  const CameraIntrinsics k = CameraIntrinsics::Default();
  const CameraPose pose;
  const auto hit = Project(k, pose, Vec3(0, 0, 1));
  REQUIRE(hit.has_value());
  CHECK(hit->x == doctest::Approx(640.0));
  CHECK(hit->y == doctest::Approx(360.0));
  CHECK(hit->depth == doctest::Approx(1.0));
}

TEST_CASE("lateral offset scales by focal over depth") {
  const CameraIntrinsics k = CameraIntrinsics::Default();
  const CameraPose pose;
  const auto hit = Project(k, pose, Vec3(0.5, 0, 2));
  REQUIRE(hit.has_value());
  CHECK(hit->x == doctest::Approx(890.0));  // 640 + 1000 * 0.5 / 2
  CHECK(hit->depth == doctest::Approx(2.0));
}

TEST_CASE("points at or behind the camera plane do not project") {
  const CameraIntrinsics k = CameraIntrinsics::Default();
  const CameraPose pose;
  CHECK(!Project(k, pose, Vec3(0, 0, -1)).has_value());
  CHECK(!Project(k, pose, Vec3(0.3, 0.2, 0)).has_value());
}

TEST_CASE("pose translation shifts the camera frame") {
  const CameraIntrinsics k = CameraIntrinsics::Default();
  CameraPose pose;
  pose.position = Vec3(1, 2, 3);
  const auto hit = Project(k, pose, Vec3(1, 2, 5));
  REQUIRE(hit.has_value());
  CHECK(hit->x == doctest::Approx(640.0));
  CHECK(hit->depth == doctest::Approx(2.0));
}

TEST_CASE("yaw-pitch pose looks along the expected world direction") {
  // Zero yaw, zero pitch looks along world +x; the camera frame is x right,
  // y down, z forward.
  const CameraPose pose = CameraPose::FromYawPitch(Vec3(0, 0, 1.6), 0.0, 0.0);
  const Vec3 ahead = pose.WorldToCamera(Vec3(2, 0, 1.6));
  CHECK(ahead.x() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ahead.y() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ahead.z() == doctest::Approx(2.0));

  // A point above the eye maps to negative y (image up).
  const Vec3 above = pose.WorldToCamera(Vec3(2, 0, 2.6));
  CHECK(above.y() == doctest::Approx(-1.0));

  // World +y is to the left of a +x gaze, so it lands at negative camera x.
  const Vec3 left = pose.WorldToCamera(Vec3(2, 1, 1.6));
  CHECK(left.x() == doctest::Approx(-1.0));
}

TEST_CASE("yaw rotates the gaze about world z") {
  const double yaw = std::numbers::pi / 2;  // facing world +y
  const CameraPose pose = CameraPose::FromYawPitch(Vec3(0, 0, 0), yaw, 0.0);
  const Vec3 ahead = pose.WorldToCamera(Vec3(0, 3, 0));
  CHECK(ahead.z() == doctest::Approx(3.0));
  CHECK(ahead.x() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("positive pitch looks up") {
  const double pitch = std::numbers::pi / 4;
  const CameraPose pose = CameraPose::FromYawPitch(Vec3(0, 0, 0), 0.0, pitch);
  const Vec3 target(std::cos(pitch), 0, std::sin(pitch));
  const Vec3 ahead = pose.WorldToCamera(target);
  CHECK(ahead.z() == doctest::Approx(1.0));
  CHECK(ahead.y() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("orientation quaternions stay normalized") {
  for (double yaw : {0.0, 0.5, 2.0, 5.0}) {
    for (double pitch : {-0.3, 0.0, 0.3}) {
      const CameraPose pose = CameraPose::FromYawPitch(Vec3(1, 2, 1.7), yaw, pitch);
      CHECK(std::abs(pose.orientation.norm() - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("rect containment is inclusive of edges") {
  const Rect2 rect{1.0, 2.0, 3.0, 4.0};
  CHECK(rect.IsValid());
  CHECK(rect.Contains(1.0, 2.0));
  CHECK(rect.Contains(3.0, 4.0));
  CHECK(rect.Contains(2.0, 3.0));
  CHECK(!rect.Contains(0.999, 3.0));
  CHECK(!rect.Contains(2.0, 4.001));
  CHECK(!Rect2{1.0, 1.0, 1.0, 2.0}.IsValid());
}

}  // TEST_SUITE

}  // namespace
}  // namespace panoptica

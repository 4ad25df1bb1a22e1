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

#include "panoptica/tour.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "panoptica/rng.hpp"
#include "test_util.hpp"

namespace panoptica {
namespace {

using testing::InsideAnyRect;
using testing::ReadTextFile;
using testing::ScratchDir;
using testing::WriteTextFile;

const std::vector<Rect2> kHall = {Rect2{0.0, 0.0, 4.0, 2.0}, Rect2{3.0, 1.5, 6.0, 5.0}};

double PitchOf(const CameraPose& pose) {
  const Vec3 forward = pose.orientation.conjugate() * Vec3(0.0, 0.0, 1.0);
  return std::asin(forward.z());
}

TEST_SUITE("tour") {

TEST_CASE("single frame plan") {
  Rng rng(11);
  const TourPlan plan = GenerateTour(kHall, 1, TourParams{}, rng);
  REQUIRE(plan.frames.size() == 1);
  CHECK(plan.frames[0].index == 0);
  CHECK(plan.frames[0].epoch == 0);
  CHECK(plan.epoch_count() == 1);
}

TEST_CASE("epoch index advances every five frames") {
  Rng rng(3);
  const TourPlan plan = GenerateTour(kHall, 12, TourParams{}, rng);
  REQUIRE(plan.frames.size() == 12);
  const std::vector<int> expected = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 2};
  for (int i = 0; i < 12; ++i) {
    CHECK(plan.frames[i].index == i);
    CHECK(plan.frames[i].epoch == expected[static_cast<std::size_t>(i)]);
  }
  CHECK(plan.epoch_count() == 3);
  CHECK(plan.epoch_length == 5);
}

TEST_CASE("epoch length is configurable") {
  TourParams params;
  params.epoch_length = 3;
  Rng rng(9);
  const TourPlan plan = GenerateTour(kHall, 7, params, rng);
  const std::vector<int> expected = {0, 0, 0, 1, 1, 1, 2};
  for (int i = 0; i < 7; ++i) {
    CHECK(plan.frames[i].epoch == expected[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("long walks stay inside free space at eye height") {
  const TourParams params;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const TourPlan plan = GenerateTour(kHall, 10000, params, rng);
    REQUIRE(plan.frames.size() == 10000);
    const TourFrame* previous = nullptr;
    for (const TourFrame& frame : plan.frames) {
      const Vec3& p = frame.pose.position;
      CHECK(InsideAnyRect(kHall, p.x(), p.y()));
      CHECK(p.z() >= params.eye_height_min);
      CHECK(p.z() <= params.eye_height_max);
      CHECK(std::abs(PitchOf(frame.pose)) <= params.pitch_limit + 1e-9);
      CHECK(std::abs(frame.pose.orientation.norm() - 1.0) <= 1e-9);
      CHECK(frame.epoch == frame.index / params.epoch_length);
      if (previous != nullptr) {
        const double step = (p - previous->pose.position).norm();
        CHECK(step <= params.max_step + 1e-9);
      }
      previous = &frame;
    }
  }
}

TEST_CASE("poses are level about the view axis") {
  Rng rng(5);
  const TourPlan plan = GenerateTour(kHall, 200, TourParams{}, rng);
  for (const TourFrame& frame : plan.frames) {
    const Vec3 right = frame.pose.orientation.conjugate() * Vec3(1.0, 0.0, 0.0);
    CHECK(std::abs(right.z()) <= 1e-9);  // zero roll: screen x stays horizontal
  }
}

TEST_CASE("identical seeds reproduce the plan bit for bit") {
  Rng rng1(77), rng2(77), rng3(78);
  const TourPlan a = GenerateTour(kHall, 500, TourParams{}, rng1);
  const TourPlan b = GenerateTour(kHall, 500, TourParams{}, rng2);
  const TourPlan c = GenerateTour(kHall, 500, TourParams{}, rng3);
  REQUIRE(a.frames.size() == b.frames.size());
  bool all_equal = true;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    all_equal = all_equal && a.frames[i].pose.position == b.frames[i].pose.position &&
                a.frames[i].pose.orientation.coeffs() == b.frames[i].pose.orientation.coeffs();
  }
  CHECK(all_equal);
  bool any_differs = false;
  for (std::size_t i = 0; i < c.frames.size(); ++i) {
    any_differs = any_differs || a.frames[i].pose.position != c.frames[i].pose.position;
  }
  CHECK(any_differs);
}

TEST_CASE("plan round-trips through its file form losslessly") {
  Rng rng(123);
  const TourPlan plan = GenerateTour(kHall, 37, TourParams{}, rng);
  ScratchDir dir;
  SaveTourPlan(plan, dir.file("plan.json"));
  const TourPlan loaded = LoadTourPlan(dir.file("plan.json"));
  CHECK(loaded.epoch_length == plan.epoch_length);
  REQUIRE(loaded.frames.size() == plan.frames.size());
  for (std::size_t i = 0; i < plan.frames.size(); ++i) {
    CHECK(loaded.frames[i].index == plan.frames[i].index);
    CHECK(loaded.frames[i].epoch == plan.frames[i].epoch);
    CHECK(loaded.frames[i].pose.position == plan.frames[i].pose.position);
    CHECK(loaded.frames[i].pose.orientation.coeffs() == plan.frames[i].pose.orientation.coeffs());
  }
}

TEST_CASE("generation rejects unusable inputs") {
  Rng rng(1);
  CHECK_THROWS_AS(GenerateTour({}, 10, TourParams{}, rng), std::invalid_argument);
  CHECK_THROWS_AS(GenerateTour(kHall, 0, TourParams{}, rng), std::invalid_argument);

  TourParams zero_step;
  zero_step.max_step = 0.0;
  CHECK_THROWS_AS(GenerateTour(kHall, 10, zero_step, rng), std::invalid_argument);

  TourParams inverted_eyes;
  inverted_eyes.eye_height_min = 2.0;
  inverted_eyes.eye_height_max = 1.0;
  CHECK_THROWS_AS(GenerateTour(kHall, 10, inverted_eyes, rng), std::invalid_argument);

  TourParams bad_epoch;
  bad_epoch.epoch_length = 0;
  CHECK_THROWS_AS(GenerateTour(kHall, 10, bad_epoch, rng), std::invalid_argument);

  TourParams bad_pitch;
  bad_pitch.pitch_limit = 2.0;
  CHECK_THROWS_AS(GenerateTour(kHall, 10, bad_pitch, rng), std::invalid_argument);
}

TEST_CASE("plan loader rejects corrupted files") {
  ScratchDir dir;

  SUBCASE("missing file") {
    CHECK_THROWS_AS(LoadTourPlan(dir.file("absent.json")), std::runtime_error);
  }
  SUBCASE("wrong version") {
    WriteTextFile(dir.file("plan.json"), R"({"version": 9, "epoch_length": 5, "frames": []})");
    CHECK_THROWS_AS(LoadTourPlan(dir.file("plan.json")), std::runtime_error);
  }
  SUBCASE("non-unit orientation") {
    WriteTextFile(dir.file("plan.json"), R"({
      "version": 1, "epoch_length": 5,
      "frames": [{"index": 0, "epoch": 0,
                  "position": [0, 0, 1.5], "orientation": [2, 0, 0, 0]}]
    })");
    CHECK_THROWS_AS(LoadTourPlan(dir.file("plan.json")), std::runtime_error);
  }
  SUBCASE("epoch inconsistent with index") {
    WriteTextFile(dir.file("plan.json"), R"({
      "version": 1, "epoch_length": 5,
      "frames": [{"index": 7, "epoch": 0,
                  "position": [0, 0, 1.5], "orientation": [1, 0, 0, 0]}]
    })");
    CHECK_THROWS_AS(LoadTourPlan(dir.file("plan.json")), std::runtime_error);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace panoptica

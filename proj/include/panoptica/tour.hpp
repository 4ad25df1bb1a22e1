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

#include <filesystem>
#include <numbers>
#include <vector>

#include "panoptica/camera.hpp"
#include "panoptica/rng.hpp"

namespace panoptica {

struct TourParams {
  int epoch_length = 5;      // frames between movable re-randomizations
  double eye_height_min = 1.5;
  double eye_height_max = 1.8;
  double max_step = 0.35;    // meters between consecutive positions
  double pitch_limit = 20.0 * std::numbers::pi / 180.0;
  double yaw_drift = 0.6;    // max |yaw change| per frame, radians
  int retry_budget = 100;    // step proposals per frame before staying put

  void Validate() const;
};

struct TourFrame {
  int index = 0;
  CameraPose pose;
  int epoch = 0;
};

struct TourPlan {
  int epoch_length = 5;
  std::vector<TourFrame> frames;

  int epoch_count() const { return frames.empty() ? 0 : frames.back().epoch + 1; }
};

/// Random walk through the free-space rectangles: each step proposes a bounded
/// move at eye height (falling back to staying in place when every proposal
/// leaves free space), yaw drifts, pitch resamples within its limit. Epoch
/// indices advance every epoch_length frames.
TourPlan GenerateTour(const std::vector<Rect2>& free_space, int n_frames,
                      const TourParams& params, Rng& rng);

/// Versioned JSON persistence (docs/formats.md); Load(Save(plan)) is
/// lossless, including exact pose doubles.
void SaveTourPlan(const TourPlan& plan, const std::filesystem::path& path);
TourPlan LoadTourPlan(const std::filesystem::path& path);

}  // namespace panoptica

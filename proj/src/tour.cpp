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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace panoptica {
namespace {

bool InFreeSpace(const std::vector<Rect2>& free_space, double x, double y) {
  for (const Rect2& rect : free_space) {
    if (rect.Contains(x, y)) return true;
  }
  return false;
}

}  // namespace

void TourParams::Validate() const {
  if (epoch_length < 1) throw std::invalid_argument("tour: epoch_length must be >= 1");
  if (max_step <= 0.0) throw std::invalid_argument("tour: unsatisfiable step constraint");
  if (eye_height_min > eye_height_max) throw std::invalid_argument("tour: empty eye-height range");
  if (pitch_limit < 0.0 || pitch_limit >= std::numbers::pi / 2) {
    throw std::invalid_argument("tour: pitch_limit out of range");
  }
  if (retry_budget < 1) throw std::invalid_argument("tour: retry_budget must be >= 1");
}

TourPlan GenerateTour(const std::vector<Rect2>& free_space, int n_frames,
                      const TourParams& params, Rng& rng) {
  params.Validate();
  if (free_space.empty()) throw std::invalid_argument("tour: free space is empty");
  if (n_frames < 1) throw std::invalid_argument("tour: n_frames must be >= 1");

  TourPlan plan;
  plan.epoch_length = params.epoch_length;
  plan.frames.reserve(n_frames);

  // Vertical steps are kept small so a horizontal budget always remains.
  const double z_step = std::min(0.05, params.max_step / 4.0);

  double x = 0.0, y = 0.0, z = 0.0, yaw = 0.0;
  for (int index = 0; index < n_frames; ++index) {
    if (index == 0) {
      const Rect2& rect = free_space[rng.UniformIndex(free_space.size())];
      x = rng.Uniform(rect.x_min, rect.x_max);
      y = rng.Uniform(rect.y_min, rect.y_max);
      z = rng.Uniform(params.eye_height_min, params.eye_height_max);
      yaw = rng.UniformAngle();
    } else {
      const double next_z = std::clamp(z + rng.Uniform(-z_step, z_step), params.eye_height_min,
                                       params.eye_height_max);
      const double dz = next_z - z;
      const double horizontal_budget = std::sqrt(params.max_step * params.max_step - dz * dz);
      z = next_z;
      for (int attempt = 0; attempt < params.retry_budget; ++attempt) {
        const double angle = rng.UniformAngle();
        const double distance = rng.Uniform(0.0, horizontal_budget);
        const double cx = x + std::cos(angle) * distance;
        const double cy = y + std::sin(angle) * distance;
        if (InFreeSpace(free_space, cx, cy)) {
          x = cx;
          y = cy;
          break;
        }
      }
      // All proposals rejected: stay in place, which is always valid.
      yaw += rng.Uniform(-params.yaw_drift, params.yaw_drift);
    }
    const double pitch = rng.Uniform(-params.pitch_limit, params.pitch_limit);

    TourFrame frame;
    frame.index = index;
    frame.epoch = index / params.epoch_length;
    frame.pose = CameraPose::FromYawPitch(Vec3(x, y, z), yaw, pitch);
    plan.frames.push_back(frame);
  }
  return plan;
}

void SaveTourPlan(const TourPlan& plan, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["epoch_length"] = plan.epoch_length;
  nlohmann::json frames = nlohmann::json::array();
  for (const TourFrame& frame : plan.frames) {
    const Quat& q = frame.pose.orientation;
    frames.push_back({{"index", frame.index},
                      {"epoch", frame.epoch},
                      {"position", {frame.pose.position.x(), frame.pose.position.y(),
                                    frame.pose.position.z()}},
                      {"orientation", {q.w(), q.x(), q.y(), q.z()}}});
  }
  doc["frames"] = std::move(frames);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("tour: cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

TourPlan LoadTourPlan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("tour: cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& error) {
    throw std::runtime_error("tour: " + path.string() + ": " + error.what());
  }
  if (doc.value("version", 0) != 1) {
    throw std::runtime_error("tour: unsupported plan version in " + path.string());
  }

  TourPlan plan;
  plan.epoch_length = doc.at("epoch_length").get<int>();
  if (plan.epoch_length < 1) throw std::runtime_error("tour: bad epoch_length in " + path.string());
  for (const nlohmann::json& entry : doc.at("frames")) {
    TourFrame frame;
    frame.index = entry.at("index").get<int>();
    frame.epoch = entry.at("epoch").get<int>();
    const auto& p = entry.at("position");
    frame.pose.position = Vec3(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>());
    const auto& q = entry.at("orientation");
    frame.pose.orientation = Quat(q.at(0).get<double>(), q.at(1).get<double>(),
                                  q.at(2).get<double>(), q.at(3).get<double>());
    if (std::abs(frame.pose.orientation.norm() - 1.0) > 1e-9) {
      throw std::runtime_error("tour: non-unit orientation in " + path.string());
    }
    if (frame.epoch != frame.index / plan.epoch_length) {
      throw std::runtime_error("tour: epoch index mismatch in " + path.string());
    }
    plan.frames.push_back(frame);
  }
  return plan;
}

}  // namespace panoptica

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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "panoptica/camera.hpp"
#include "panoptica/rng.hpp"

namespace panoptica {

inline constexpr std::string_view kToolkitVersion = "0.1.0";

/// One generated frame: artifact paths relative to the manifest directory,
/// an empty path meaning the artifact was not produced. `split` is empty
/// until the dataset is split, then one of train/val/test.
struct FrameRecord {
  int id = 0;
  std::string rgb_path;
  std::string semantic_path;
  std::string instance_path;
  std::string panoptic_path;
  std::string depth_path;
  CameraPose pose;
  int epoch = 0;
  std::string split;
};

struct DatasetManifest {
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
  std::string taxonomy_path;
  std::string instance_document;  // COCO instance export, relative path
  std::string panoptic_document;
  std::string toolkit_version = std::string(kToolkitVersion);
  std::vector<FrameRecord> frames;
};

/// Serialize followed by Parse reproduces the manifest exactly; poses use
/// shortest-round-trip doubles. Parse validates unique frame ids, known
/// split tags, and positive dimensions. Throws std::runtime_error.
std::string SerializeManifest(const DatasetManifest& manifest);
DatasetManifest ParseManifest(std::string_view text);

void SaveManifest(const DatasetManifest& manifest, const std::filesystem::path& path);
DatasetManifest LoadManifest(const std::filesystem::path& path);

/// Either fractional ratios (train, val, test) summing to 1 within 1e-9, or
/// absolute train/test counts with val taking the remainder.
struct SplitSpec {
  std::optional<std::array<double, 3>> ratios;
  std::optional<std::array<int, 2>> counts;  // train, test
};

struct SplitCounts {
  int train = 0;
  int val = 0;
  int test = 0;
};

/// Ratio mode floors train and test and gives val the remainder. Throws
/// std::invalid_argument on bad specs or counts exceeding n.
SplitCounts ResolveSplitCounts(const SplitSpec& spec, int n);

/// Tags every frame by drawing one permutation from `rng`: the first
/// `train` permuted frames become train, the next `test` become test, the
/// rest val.
void SplitDataset(DatasetManifest& manifest, const SplitSpec& spec, Rng& rng);

}  // namespace panoptica

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
#include <string>
#include <vector>

#include "panoptica/camera.hpp"
#include "panoptica/manifest.hpp"
#include "panoptica/metrics.hpp"
#include "panoptica/taxonomy.hpp"
#include "panoptica/tour.hpp"

namespace panoptica {

struct GenerateOptions {
  std::filesystem::path scene_path;  // scene descriptor JSON
  std::filesystem::path output_dir;
  int n_frames = 0;
  std::uint64_t seed = 0;
  CameraIntrinsics intrinsics = CameraIntrinsics::Default(1280, 720);
  TourParams tour;
  bool write_depth = false;
  int threads = 0;  // 0 picks the hardware concurrency
};

/// Renders the full dataset into output_dir: per-frame rgb/semantic/instance/
/// panoptic PNGs (plus optional depth), both COCO documents, a copy of the
/// taxonomy, and manifest.json. (descriptor, seed) determines every output
/// byte; frames render in parallel. Errors abort with the failing frame id.
DatasetManifest RunGenerate(const GenerateOptions& options);

struct EvaluateOptions {
  std::filesystem::path manifest_path;
  std::filesystem::path predictions_path;  // panoptic-format document, scores optional
  std::filesystem::path report_path;       // empty = no report file
  std::string split = "test";              // empty = every frame
};

/// Scores a prediction document against the manifest's ground-truth pixels:
/// PQ/SQ/RQ, mIoU, and AP over thing categories in both bbox and mask modes.
/// Frames of the requested split are used; a manifest with no split tags at
/// all falls back to every frame. Predictions referencing unknown image ids
/// are an error; frames without predictions count as empty prediction sets.
MetricReport RunEvaluate(const EvaluateOptions& options);

/// Six-row summary table for the console.
std::string FormatMetricTable(const MetricReport& report);

/// Full report with per-category breakdowns as canonical JSON.
std::string SerializeMetricReport(const MetricReport& report, const Taxonomy& taxonomy);

struct ValidationReport {
  std::vector<std::string> violations;
  int frames_checked = 0;   // existence checks cover every frame
  int frames_sampled = 0;   // pixel-level checks cover this evenly spaced sample
};

/// Checks file existence for every frame, then dimensions, document
/// consistency, and semantic/panoptic pixel agreement on at most 32 evenly
/// spaced frames. Violations are reported, not thrown.
ValidationReport ValidateManifest(const std::filesystem::path& manifest_path);

struct ConvertOptions {
  std::filesystem::path semantic_dir;  // palette-colored semantic PNGs
  std::filesystem::path taxonomy_path;
  std::filesystem::path output_dir;
  int connectivity = 8;
};

/// Builds annotations for an external directory of semantic masks (no
/// geometry involved): instances get ids from connected components,
/// off-palette pixels become unlabeled, and the output mirrors the generate
/// layout minus rgb/instance/depth artifacts.
DatasetManifest RunConvert(const ConvertOptions& options);

/// Writes a side-by-side rgb | semantic | panoptic sheet for one frame;
/// panoptic pixels show their stuff category color, things white, void black.
void RenderPreview(const std::filesystem::path& manifest_path, int frame_id,
                   const std::filesystem::path& output_path);

}  // namespace panoptica

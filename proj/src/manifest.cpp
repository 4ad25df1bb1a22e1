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

#include "panoptica/manifest.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace panoptica {
namespace {

using nlohmann::json;

bool KnownSplit(const std::string& split) {
  return split.empty() || split == "train" || split == "val" || split == "test";
}

json FrameToJson(const FrameRecord& frame) {
  json files;
  files["depth"] = frame.depth_path;
  files["instance"] = frame.instance_path;
  files["panoptic"] = frame.panoptic_path;
  files["rgb"] = frame.rgb_path;
  files["semantic"] = frame.semantic_path;
  const Quat& q = frame.pose.orientation;
  json node;
  node["epoch"] = frame.epoch;
  node["files"] = std::move(files);
  node["id"] = frame.id;
  node["pose"] = {{"orientation", {q.w(), q.x(), q.y(), q.z()}},
                  {"position", {frame.pose.position.x(), frame.pose.position.y(),
                                frame.pose.position.z()}}};
  node["split"] = frame.split;
  return node;
}

FrameRecord FrameFromJson(const json& node) {
  FrameRecord frame;
  frame.id = node.at("id").get<int>();
  frame.epoch = node.at("epoch").get<int>();
  frame.split = node.at("split").get<std::string>();
  if (!KnownSplit(frame.split)) {
    throw std::runtime_error("manifest: unknown split tag \"" + frame.split + "\"");
  }
  const json& files = node.at("files");
  frame.rgb_path = files.at("rgb").get<std::string>();
  frame.semantic_path = files.at("semantic").get<std::string>();
  frame.instance_path = files.at("instance").get<std::string>();
  frame.panoptic_path = files.at("panoptic").get<std::string>();
  frame.depth_path = files.at("depth").get<std::string>();
  const json& pose = node.at("pose");
  const json& p = pose.at("position");
  frame.pose.position = Vec3(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>());
  const json& q = pose.at("orientation");
  frame.pose.orientation =
      Quat(q.at(0).get<double>(), q.at(1).get<double>(), q.at(2).get<double>(),
           q.at(3).get<double>());
  if (std::abs(frame.pose.orientation.norm() - 1.0) > 1e-9) {
    throw std::runtime_error("manifest: non-unit orientation on frame " +
                             std::to_string(frame.id));
  }
  return frame;
}

}  // namespace

std::string SerializeManifest(const DatasetManifest& manifest) {
  json doc;
  doc["version"] = 1;
  doc["width"] = manifest.width;
  doc["height"] = manifest.height;
  doc["seed"] = manifest.seed;
  doc["taxonomy"] = manifest.taxonomy_path;
  doc["instance_document"] = manifest.instance_document;
  doc["panoptic_document"] = manifest.panoptic_document;
  doc["toolkit_version"] = manifest.toolkit_version;
  json frames = json::array();
  for (const FrameRecord& frame : manifest.frames) {
    frames.push_back(FrameToJson(frame));
  }
  doc["frames"] = std::move(frames);
  return doc.dump(2) + "\n";
}

DatasetManifest ParseManifest(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& error) {
    throw std::runtime_error(std::string("manifest: not valid JSON: ") + error.what());
  }
  try {
    if (doc.value("version", 0) != 1) {
      throw std::runtime_error("manifest: unsupported version");
    }
    DatasetManifest manifest;
    manifest.width = doc.at("width").get<int>();
    manifest.height = doc.at("height").get<int>();
    if (manifest.width <= 0 || manifest.height <= 0) {
      throw std::runtime_error("manifest: non-positive frame dimensions");
    }
    manifest.seed = doc.at("seed").get<std::uint64_t>();
    manifest.taxonomy_path = doc.at("taxonomy").get<std::string>();
    manifest.instance_document = doc.at("instance_document").get<std::string>();
    manifest.panoptic_document = doc.at("panoptic_document").get<std::string>();
    manifest.toolkit_version = doc.at("toolkit_version").get<std::string>();
    std::set<int> ids;
    for (const json& node : doc.at("frames")) {
      FrameRecord frame = FrameFromJson(node);
      if (!ids.insert(frame.id).second) {
        throw std::runtime_error("manifest: duplicate frame id " + std::to_string(frame.id));
      }
      manifest.frames.push_back(std::move(frame));
    }
    return manifest;
  } catch (const json::exception& error) {
    throw std::runtime_error(std::string("manifest: malformed document: ") + error.what());
  }
}

void SaveManifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("manifest: cannot write " + path.string());
  }
  out << SerializeManifest(manifest);
}

DatasetManifest LoadManifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("manifest: cannot open " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ParseManifest(text);
}

SplitCounts ResolveSplitCounts(const SplitSpec& spec, int n) {
  if (n < 0) {
    throw std::invalid_argument("manifest: negative frame count");
  }
  if (spec.ratios.has_value() == spec.counts.has_value()) {
    throw std::invalid_argument("manifest: split spec needs exactly one of ratios or counts");
  }
  SplitCounts counts;
  if (spec.ratios.has_value()) {
    const auto& [train, val, test] = *spec.ratios;
    if (train < 0.0 || val < 0.0 || test < 0.0) {
      throw std::invalid_argument("manifest: negative split ratio");
    }
    if (std::abs(train + val + test - 1.0) > 1e-9) {
      throw std::invalid_argument("manifest: split ratios must sum to 1");
    }
    counts.train = static_cast<int>(std::floor(train * n));
    counts.test = static_cast<int>(std::floor(test * n));
    counts.val = n - counts.train - counts.test;
  } else {
    const auto& [train, test] = *spec.counts;
    if (train < 0 || test < 0) {
      throw std::invalid_argument("manifest: negative split count");
    }
    if (train + test > n) {
      throw std::invalid_argument("manifest: split counts exceed the frame count");
    }
    counts.train = train;
    counts.test = test;
    counts.val = n - train - test;
  }
  return counts;
}

void SplitDataset(DatasetManifest& manifest, const SplitSpec& spec, Rng& rng) {
  const int n = static_cast<int>(manifest.frames.size());
  const SplitCounts counts = ResolveSplitCounts(spec, n);
  const std::vector<int> order = rng.Permutation(n);
  for (int i = 0; i < n; ++i) {
    FrameRecord& frame = manifest.frames[order[i]];
    if (i < counts.train) {
      frame.split = "train";
    } else if (i < counts.train + counts.test) {
      frame.split = "test";
    } else {
      frame.split = "val";
    }
  }
}

}  // namespace panoptica

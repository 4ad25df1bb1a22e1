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

#include "panoptica/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"
#include "panoptica/annotate.hpp"
#include "panoptica/coco.hpp"
#include "panoptica/png_io.hpp"
#include "panoptica/render.hpp"
#include "panoptica/scene.hpp"

namespace fs = std::filesystem;

namespace panoptica {
namespace {

std::string FrameStem(int id) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%06d", id);
  return buffer;
}

void WriteTextFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << text;
}

std::string ReadTextFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

/// Row-major float32, little-endian regardless of host.
void WriteDepthRaw(const fs::path& path, const DepthImage& depth) {
  std::string bytes;
  bytes.reserve(static_cast<std::size_t>(depth.width()) * depth.height() * 4);
  for (int y = 0; y < depth.height(); ++y) {
    for (int x = 0; x < depth.width(); ++x) {
      const auto bits = std::bit_cast<std::uint32_t>(depth.at(x, y));
      bytes.push_back(static_cast<char>(bits & 0xFF));
      bytes.push_back(static_cast<char>((bits >> 8) & 0xFF));
      bytes.push_back(static_cast<char>((bits >> 16) & 0xFF));
      bytes.push_back(static_cast<char>((bits >> 24) & 0xFF));
    }
  }
  WriteTextFile(path, bytes);
}

/// Runs fn(0..count-1) on a small pool; rethrows the lowest-index failure.
void ParallelFrames(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) {
    return;
  }
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  threads = std::clamp(threads, 1, count);
  if (threads == 1) {
    for (int i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::vector<std::string> errors(count);
  std::vector<std::uint8_t> has_error(count, 0);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        if (failed.load()) {
          continue;
        }
        try {
          fn(i);
        } catch (const std::exception& error) {
          errors[i] = error.what();
          has_error[i] = 1;
          failed.store(true);
        }
      }
    });
  }
  for (std::thread& worker : pool) {
    worker.join();
  }
  for (int i = 0; i < count; ++i) {
    if (has_error[i]) {
      throw std::runtime_error(errors[i]);
    }
  }
}

IndexImage InstanceFromPng(const Image<std::uint16_t>& image) {
  IndexImage instance(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      instance.at(x, y) = image.at(x, y);
    }
  }
  return instance;
}

/// Category index per pixel, -1 for unlabeled; throws on off-palette colors.
IndexImage CategoryIndices(const RgbImage& semantic, const Taxonomy& taxonomy) {
  IndexImage indices(semantic.width(), semantic.height(), -1);
  for (int y = 0; y < semantic.height(); ++y) {
    for (int x = 0; x < semantic.width(); ++x) {
      const Rgb8 color = semantic.at(x, y);
      if (color == kBlack) {
        continue;
      }
      const std::optional<int> category = taxonomy.CategoryFromColor(color);
      if (!category.has_value()) {
        throw std::runtime_error("off-palette semantic color at pixel (" + std::to_string(x) +
                                 ", " + std::to_string(y) + ")");
      }
      indices.at(x, y) = *category;
    }
  }
  return indices;
}

RleMask VoidMask(const RgbImage& semantic) {
  GrayImage dense(semantic.width(), semantic.height());
  for (int y = 0; y < semantic.height(); ++y) {
    for (int x = 0; x < semantic.width(); ++x) {
      dense.at(x, y) = semantic.at(x, y) == kBlack ? 1 : 0;
    }
  }
  return RleMask::FromDense(dense);
}

void PaintCategory(const RleMask& mask, int category, IndexImage& canvas) {
  std::int64_t pos = 0;
  bool set = false;
  int32_t* data = canvas.data();
  for (const std::int64_t run : mask.counts()) {
    if (set) {
      std::fill(data + pos, data + pos + run, category);
    }
    pos += run;
    set = !set;
  }
}

}  // namespace

DatasetManifest RunGenerate(const GenerateOptions& options) {
  options.intrinsics.Validate();
  if (options.n_frames < 0) {
    throw std::invalid_argument("generate: negative frame count");
  }
  const SceneDescription scene = LoadSceneDescription(options.scene_path);

  TourPlan plan;
  plan.epoch_length = options.tour.epoch_length;
  if (options.n_frames > 0) {
    Rng tour_rng(DeriveSeed(options.seed, "tour"));
    plan = GenerateTour(scene.free_space, options.n_frames, options.tour, tour_rng);
  }
  std::vector<PlacementResult> epochs;
  for (int e = 0; e < plan.epoch_count(); ++e) {
    Rng placement_rng(DeriveSeed(options.seed, "placement", static_cast<std::uint64_t>(e)));
    epochs.push_back(PlaceMovables(scene.workbench, scene.movables, placement_rng));
  }

  const fs::path out = options.output_dir;
  fs::create_directories(out / "annotations");
  if (options.n_frames > 0) {
    fs::create_directories(out / "frames");
  }

  const int n = options.n_frames;
  std::vector<std::vector<Segment>> frame_segments(n);
  ParallelFrames(n, options.threads, [&](int i) {
    try {
      const TourFrame& tour_frame = plan.frames[i];
      const FrameSet frame =
          RenderFrame(scene.static_mesh, scene.taxonomy, scene.movables,
                      epochs[tour_frame.epoch].placements, tour_frame.pose, options.intrinsics);

      SegmentationOptions seg_options;
      seg_options.instance = &frame.instance;
      frame_segments[i] = SemanticToSegments(frame.semantic, scene.taxonomy, seg_options);
      const GrayImage panoptic = BuildPanopticImage(frame.semantic, scene.taxonomy);

      Image<std::uint16_t> instance16(frame.width(), frame.height());
      for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
          const std::int32_t id = frame.instance.at(x, y);
          if (id < 0 || id > 65535) {
            throw std::runtime_error("instance id " + std::to_string(id) +
                                     " does not fit the 16-bit instance image");
          }
          instance16.at(x, y) = static_cast<std::uint16_t>(id);
        }
      }

      const std::string stem = FrameStem(tour_frame.index);
      WritePng(out / "frames" / (stem + ".png"), frame.rgb);
      WritePng(out / "frames" / (stem + "_sem.png"), frame.semantic);
      WritePng(out / "frames" / (stem + "_inst.png"), instance16);
      WritePng(out / "frames" / (stem + "_pan.png"), panoptic);
      if (options.write_depth) {
        WriteDepthRaw(out / "frames" / (stem + "_depth.bin"), frame.depth);
      }
    } catch (const std::exception& error) {
      throw std::runtime_error("generate: frame " + std::to_string(i) + ": " + error.what());
    }
  });

  std::vector<FrameAnnotation> annotations;
  annotations.reserve(n);
  for (int i = 0; i < n; ++i) {
    const std::string stem = FrameStem(plan.frames[i].index);
    FrameAnnotation annotation;
    annotation.image = CocoImage{plan.frames[i].index, "frames/" + stem + ".png",
                                 options.intrinsics.width, options.intrinsics.height};
    annotation.panoptic_file_name = "frames/" + stem + "_pan.png";
    annotation.segments = std::move(frame_segments[i]);
    annotations.push_back(std::move(annotation));
  }
  WriteTextFile(out / "annotations" / "instances.json",
                SerializeInstanceDocument(BuildInstanceDocument(scene.taxonomy, annotations)));
  WriteTextFile(out / "annotations" / "panoptic.json",
                SerializePanopticDocument(BuildPanopticDocument(scene.taxonomy, annotations)));
  WriteTextFile(out / "taxonomy.txt", scene.taxonomy.Emit());

  DatasetManifest manifest;
  manifest.width = options.intrinsics.width;
  manifest.height = options.intrinsics.height;
  manifest.seed = options.seed;
  manifest.taxonomy_path = "taxonomy.txt";
  manifest.instance_document = "annotations/instances.json";
  manifest.panoptic_document = "annotations/panoptic.json";
  for (int i = 0; i < n; ++i) {
    const TourFrame& tour_frame = plan.frames[i];
    const std::string stem = FrameStem(tour_frame.index);
    FrameRecord record;
    record.id = tour_frame.index;
    record.rgb_path = "frames/" + stem + ".png";
    record.semantic_path = "frames/" + stem + "_sem.png";
    record.instance_path = "frames/" + stem + "_inst.png";
    record.panoptic_path = "frames/" + stem + "_pan.png";
    if (options.write_depth) {
      record.depth_path = "frames/" + stem + "_depth.bin";
    }
    record.pose = tour_frame.pose;
    record.epoch = tour_frame.epoch;
    manifest.frames.push_back(std::move(record));
  }
  SaveManifest(manifest, out / "manifest.json");
  return manifest;
}

namespace {

std::vector<int> SelectFrames(const DatasetManifest& manifest, const std::string& split) {
  std::vector<int> selected;
  bool any_tagged = false;
  for (std::size_t i = 0; i < manifest.frames.size(); ++i) {
    if (!manifest.frames[i].split.empty()) {
      any_tagged = true;
    }
    if (split.empty() || manifest.frames[i].split == split) {
      selected.push_back(static_cast<int>(i));
    }
  }
  if (!split.empty() && selected.empty()) {
    if (!any_tagged) {
      selected.resize(manifest.frames.size());
      for (std::size_t i = 0; i < manifest.frames.size(); ++i) {
        selected[i] = static_cast<int>(i);
      }
    } else if (!manifest.frames.empty()) {
      throw std::runtime_error("evaluate: no frames tagged \"" + split + "\"");
    }
  }
  return selected;
}

struct FrameEval {
  std::vector<EvalSegment> gt;
  std::vector<EvalSegment> pred;
  std::vector<EvalSegment> gt_things;
  std::vector<EvalSegment> pred_things;
  MatchResult matches;
  IndexImage gt_categories;
  IndexImage pred_categories;
  std::int64_t gt_segment_count = 0;
};

}  // namespace

MetricReport RunEvaluate(const EvaluateOptions& options) {
  const fs::path base = options.manifest_path.parent_path();
  const DatasetManifest manifest = LoadManifest(options.manifest_path);
  const Taxonomy taxonomy = Taxonomy::Load(base / manifest.taxonomy_path);
  const PanopticDocument predictions =
      ParsePanopticDocument(ReadTextFile(options.predictions_path));

  const std::vector<int> selected = SelectFrames(manifest, options.split);
  std::set<int> known_ids;
  for (const FrameRecord& frame : manifest.frames) {
    known_ids.insert(frame.id);
  }
  std::map<int, const PanopticAnnotation*> predictions_by_id;
  for (const PanopticAnnotation& annotation : predictions.annotations) {
    if (known_ids.count(annotation.image_id) == 0) {
      throw std::runtime_error("evaluate: prediction references unknown image id " +
                               std::to_string(annotation.image_id));
    }
    predictions_by_id[annotation.image_id] = &annotation;
  }

  std::vector<FrameEval> evals(selected.size());
  ParallelFrames(static_cast<int>(selected.size()), 0, [&](int slot) {
    const FrameRecord& record = manifest.frames[selected[slot]];
    try {
      FrameEval& eval = evals[slot];
      const RgbImage semantic = ReadPngRgb(base / record.semantic_path);
      eval.gt_categories = CategoryIndices(semantic, taxonomy);

      SegmentationOptions seg_options;
      IndexImage instance;
      if (!record.instance_path.empty()) {
        instance = InstanceFromPng(ReadPngGray16(base / record.instance_path));
        seg_options.instance = &instance;
      }
      const std::vector<Segment> gt_segments =
          SemanticToSegments(semantic, taxonomy, seg_options);
      eval.gt_segment_count = static_cast<std::int64_t>(gt_segments.size());
      for (const Segment& segment : gt_segments) {
        eval.gt.push_back(EvalSegment{segment.category, segment.mask, 1.0});
        if (taxonomy.IsThing(segment.category)) {
          eval.gt_things.push_back(eval.gt.back());
        }
      }

      eval.pred_categories = IndexImage(semantic.width(), semantic.height(), -1);
      const auto it = predictions_by_id.find(record.id);
      if (it != predictions_by_id.end()) {
        for (const PanopticSegmentInfo& info : it->second->segments_info) {
          if (info.category_id < 0 || info.category_id >= taxonomy.size()) {
            throw std::runtime_error("prediction segment category " +
                                     std::to_string(info.category_id) +
                                     " is outside the taxonomy");
          }
          if (info.mask.width() != semantic.width() || info.mask.height() != semantic.height()) {
            throw std::runtime_error("prediction mask size does not match the frame");
          }
          eval.pred.push_back(
              EvalSegment{info.category_id, info.mask, info.score.value_or(1.0)});
          if (taxonomy.IsThing(info.category_id)) {
            eval.pred_things.push_back(eval.pred.back());
          }
          PaintCategory(info.mask, info.category_id, eval.pred_categories);
        }
      }
      eval.matches = MatchSegments(eval.gt, eval.pred, VoidMask(semantic));
    } catch (const std::exception& error) {
      throw std::runtime_error("evaluate: frame " + std::to_string(record.id) + ": " +
                               error.what());
    }
  });

  PqAccumulator pq;
  ConfusionAccumulator confusion(taxonomy.size());
  std::vector<std::vector<EvalSegment>> gt_things;
  std::vector<std::vector<EvalSegment>> pred_things;
  std::int64_t gt_segments = 0;
  for (FrameEval& eval : evals) {
    pq.Add(eval.matches);
    confusion.Add(eval.gt_categories, eval.pred_categories);
    gt_things.push_back(std::move(eval.gt_things));
    pred_things.push_back(std::move(eval.pred_things));
    gt_segments += eval.gt_segment_count;
  }

  MetricReport report;
  report.pq = pq.Report();
  report.iou = MeanIou(confusion);
  report.ap_bbox_percent = AveragePrecision(gt_things, pred_things, ApMode::kBbox);
  report.ap_seg_percent = AveragePrecision(gt_things, pred_things, ApMode::kSeg);
  report.images = static_cast<int>(selected.size());
  report.gt_segments = gt_segments;

  if (!options.report_path.empty()) {
    WriteTextFile(options.report_path, SerializeMetricReport(report, taxonomy));
  }
  return report;
}

std::string FormatMetricTable(const MetricReport& report) {
  char buffer[64];
  std::string table;
  const auto row = [&](const char* name, double value) {
    std::snprintf(buffer, sizeof(buffer), "%-10s %8.2f\n", name, value);
    table += buffer;
  };
  row("PQ", report.pq.mean_pq);
  row("SQ", report.pq.mean_sq);
  row("RQ", report.pq.mean_rq);
  row("mIoU", report.iou.mean_percent);
  row("AP (bbox)", report.ap_bbox_percent);
  row("AP (seg)", report.ap_seg_percent);
  std::snprintf(buffer, sizeof(buffer), "frames %d, gt segments %lld\n", report.images,
                static_cast<long long>(report.gt_segments));
  table += buffer;
  return table;
}

std::string SerializeMetricReport(const MetricReport& report, const Taxonomy& taxonomy) {
  nlohmann::json doc;
  doc["ap_bbox"] = report.ap_bbox_percent;
  doc["ap_seg"] = report.ap_seg_percent;
  doc["images"] = report.images;
  doc["gt_segments"] = report.gt_segments;
  doc["pq"] = report.pq.mean_pq;
  doc["sq"] = report.pq.mean_sq;
  doc["rq"] = report.pq.mean_rq;
  doc["miou"] = report.iou.mean_percent;
  nlohmann::json pq_rows = nlohmann::json::array();
  for (const PqCategory& row : report.pq.categories) {
    nlohmann::json node;
    node["category"] = row.category;
    node["name"] = taxonomy.category(row.category).name;
    node["tp"] = row.tp;
    node["fp"] = row.fp;
    node["fn"] = row.fn;
    node["pq"] = row.pq;
    node["sq"] = row.sq;
    node["rq"] = row.rq;
    pq_rows.push_back(std::move(node));
  }
  doc["per_category_pq"] = std::move(pq_rows);
  nlohmann::json iou_rows = nlohmann::json::array();
  for (std::size_t c = 0; c < report.iou.per_category.size(); ++c) {
    if (!report.iou.per_category[c].has_value()) {
      continue;
    }
    nlohmann::json node;
    node["category"] = static_cast<int>(c);
    node["name"] = taxonomy.category(static_cast<int>(c)).name;
    node["iou"] = *report.iou.per_category[c];
    iou_rows.push_back(std::move(node));
  }
  doc["per_category_iou"] = std::move(iou_rows);
  return doc.dump(2) + "\n";
}

ValidationReport ValidateManifest(const std::filesystem::path& manifest_path) {
  ValidationReport report;
  DatasetManifest manifest;
  try {
    manifest = LoadManifest(manifest_path);
  } catch (const std::exception& error) {
    report.violations.emplace_back(error.what());
    return report;
  }
  const fs::path base = manifest_path.parent_path();
  report.frames_checked = static_cast<int>(manifest.frames.size());

  Taxonomy taxonomy;
  bool taxonomy_ok = false;
  try {
    taxonomy = Taxonomy::Load(base / manifest.taxonomy_path);
    taxonomy_ok = true;
  } catch (const std::exception& error) {
    report.violations.emplace_back(error.what());
  }

  const auto check_file = [&](int frame_id, const char* kind, const std::string& relative) {
    if (relative.empty()) {
      return false;
    }
    if (!fs::is_regular_file(base / relative)) {
      report.violations.push_back("frame " + std::to_string(frame_id) + ": missing " + kind +
                                  " file " + relative);
      return false;
    }
    return true;
  };
  std::map<int, const FrameRecord*> frames_ok;  // frames whose files all exist
  for (const FrameRecord& frame : manifest.frames) {
    bool ok = true;
    ok &= check_file(frame.id, "rgb", frame.rgb_path);
    ok &= check_file(frame.id, "semantic", frame.semantic_path);
    ok &= check_file(frame.id, "instance", frame.instance_path);
    ok &= check_file(frame.id, "panoptic", frame.panoptic_path);
    ok &= check_file(frame.id, "depth", frame.depth_path);
    if (ok) {
      frames_ok[frame.id] = &frame;
    }
  }

  PanopticDocument panoptic_doc;
  bool docs_ok = false;
  try {
    ParseInstanceDocument(ReadTextFile(base / manifest.instance_document));
    panoptic_doc = ParsePanopticDocument(ReadTextFile(base / manifest.panoptic_document));
    docs_ok = true;
  } catch (const std::exception& error) {
    report.violations.emplace_back(error.what());
  }

  std::map<int, const PanopticAnnotation*> doc_by_id;
  if (docs_ok) {
    std::set<int> manifest_ids;
    for (const FrameRecord& frame : manifest.frames) {
      manifest_ids.insert(frame.id);
    }
    std::set<int> doc_ids;
    for (const CocoImage& image : panoptic_doc.images) {
      doc_ids.insert(image.id);
      if (manifest_ids.count(image.id) == 0) {
        report.violations.push_back("panoptic document lists unknown image id " +
                                    std::to_string(image.id));
      }
      if (image.width != manifest.width || image.height != manifest.height) {
        report.violations.push_back("panoptic document image " + std::to_string(image.id) +
                                    " has dimensions " + std::to_string(image.width) + "x" +
                                    std::to_string(image.height) + ", manifest says " +
                                    std::to_string(manifest.width) + "x" +
                                    std::to_string(manifest.height));
      }
    }
    for (const int id : manifest_ids) {
      if (doc_ids.count(id) == 0) {
        report.violations.push_back("frame " + std::to_string(id) +
                                    " is missing from the panoptic document");
      }
    }
    for (const PanopticAnnotation& annotation : panoptic_doc.annotations) {
      doc_by_id[annotation.image_id] = &annotation;
    }
  }

  // Pixel-level checks on an evenly spaced sample.
  std::vector<const FrameRecord*> sample;
  {
    std::vector<const FrameRecord*> candidates;
    for (const auto& [id, frame] : frames_ok) {
      candidates.push_back(frame);
    }
    const int k = std::min<int>(32, static_cast<int>(candidates.size()));
    for (int i = 0; i < k; ++i) {
      sample.push_back(candidates[static_cast<std::size_t>(i) * candidates.size() / k]);
    }
  }
  report.frames_sampled = static_cast<int>(sample.size());

  for (const FrameRecord* frame : sample) {
    try {
      const RgbImage semantic = ReadPngRgb(base / frame->semantic_path);
      if (semantic.width() != manifest.width || semantic.height() != manifest.height) {
        report.violations.push_back("frame " + std::to_string(frame->id) +
                                    ": semantic dimensions " + std::to_string(semantic.width()) +
                                    "x" + std::to_string(semantic.height()) +
                                    " do not match the manifest");
        continue;
      }
      if (!frame->rgb_path.empty()) {
        const RgbImage rgb = ReadPngRgb(base / frame->rgb_path);
        if (rgb.width() != manifest.width || rgb.height() != manifest.height) {
          report.violations.push_back("frame " + std::to_string(frame->id) +
                                      ": rgb dimensions do not match the manifest");
        }
      }
      if (!frame->panoptic_path.empty() && taxonomy_ok) {
        const GrayImage stored = ReadPngGray8(base / frame->panoptic_path);
        if (stored.width() != manifest.width || stored.height() != manifest.height) {
          report.violations.push_back("frame " + std::to_string(frame->id) +
                                      ": panoptic dimensions do not match the manifest");
          continue;
        }
        const GrayImage expected = BuildPanopticImage(semantic, taxonomy, /*lenient=*/true);
        bool mismatch_reported = false;
        for (int y = 0; y < stored.height() && !mismatch_reported; ++y) {
          for (int x = 0; x < stored.width(); ++x) {
            if (stored.at(x, y) != expected.at(x, y)) {
              report.violations.push_back("frame " + std::to_string(frame->id) +
                                          ": panoptic pixel (" + std::to_string(x) + ", " +
                                          std::to_string(y) +
                                          ") disagrees with the semantic image");
              mismatch_reported = true;
              break;
            }
          }
        }
        const auto it = doc_by_id.find(frame->id);
        if (it != doc_by_id.end()) {
          std::int64_t labeled = 0;
          for (const PanopticSegmentInfo& info : it->second->segments_info) {
            labeled += info.area;
          }
          std::int64_t void_pixels = 0;
          for (int y = 0; y < semantic.height(); ++y) {
            for (int x = 0; x < semantic.width(); ++x) {
              if (expected.at(x, y) == 255) {
                ++void_pixels;
              }
            }
          }
          if (labeled + void_pixels !=
              static_cast<std::int64_t>(manifest.width) * manifest.height) {
            report.violations.push_back("frame " + std::to_string(frame->id) +
                                        ": segment areas plus void do not cover the image");
          }
        }
      }
    } catch (const std::exception& error) {
      report.violations.push_back("frame " + std::to_string(frame->id) + ": " + error.what());
    }
  }
  return report;
}

DatasetManifest RunConvert(const ConvertOptions& options) {
  const Taxonomy taxonomy = Taxonomy::Load(options.taxonomy_path);
  std::vector<fs::path> sources;
  for (const fs::directory_entry& entry : fs::directory_iterator(options.semantic_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      sources.push_back(entry.path());
    }
  }
  std::sort(sources.begin(), sources.end());
  if (sources.empty()) {
    throw std::runtime_error("convert: no .png files in " + options.semantic_dir.string());
  }

  const fs::path out = options.output_dir;
  fs::create_directories(out / "frames");
  fs::create_directories(out / "annotations");

  int width = 0;
  int height = 0;
  std::vector<FrameAnnotation> annotations(sources.size());
  ParallelFrames(static_cast<int>(sources.size()), 0, [&](int i) {
    try {
      const RgbImage semantic = ReadPngRgb(sources[i]);
      if (i == 0) {
        width = semantic.width();
        height = semantic.height();
      }
      SegmentationOptions seg_options;
      seg_options.connectivity = options.connectivity;
      seg_options.lenient = true;
      const std::string stem = FrameStem(i);
      FrameAnnotation& annotation = annotations[i];
      annotation.image =
          CocoImage{i, "frames/" + stem + "_sem.png", semantic.width(), semantic.height()};
      annotation.panoptic_file_name = "frames/" + stem + "_pan.png";
      annotation.segments = SemanticToSegments(semantic, taxonomy, seg_options);
      WritePng(out / "frames" / (stem + "_sem.png"), semantic);
      WritePng(out / "frames" / (stem + "_pan.png"),
               BuildPanopticImage(semantic, taxonomy, /*lenient=*/true));
    } catch (const std::exception& error) {
      throw std::runtime_error("convert: " + sources[i].filename().string() + ": " +
                               error.what());
    }
  });
  for (const FrameAnnotation& annotation : annotations) {
    if (annotation.image.width != width || annotation.image.height != height) {
      throw std::runtime_error("convert: " + annotation.image.file_name +
                               " has different dimensions from the first image");
    }
  }

  WriteTextFile(out / "annotations" / "instances.json",
                SerializeInstanceDocument(BuildInstanceDocument(taxonomy, annotations)));
  WriteTextFile(out / "annotations" / "panoptic.json",
                SerializePanopticDocument(BuildPanopticDocument(taxonomy, annotations)));
  WriteTextFile(out / "taxonomy.txt", taxonomy.Emit());

  DatasetManifest manifest;
  manifest.width = width;
  manifest.height = height;
  manifest.taxonomy_path = "taxonomy.txt";
  manifest.instance_document = "annotations/instances.json";
  manifest.panoptic_document = "annotations/panoptic.json";
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const std::string stem = FrameStem(static_cast<int>(i));
    FrameRecord record;
    record.id = static_cast<int>(i);
    record.semantic_path = "frames/" + stem + "_sem.png";
    record.panoptic_path = "frames/" + stem + "_pan.png";
    manifest.frames.push_back(std::move(record));
  }
  SaveManifest(manifest, out / "manifest.json");
  return manifest;
}

void RenderPreview(const std::filesystem::path& manifest_path, int frame_id,
                   const std::filesystem::path& output_path) {
  const fs::path base = manifest_path.parent_path();
  const DatasetManifest manifest = LoadManifest(manifest_path);
  const Taxonomy taxonomy = Taxonomy::Load(base / manifest.taxonomy_path);
  const FrameRecord* frame = nullptr;
  for (const FrameRecord& candidate : manifest.frames) {
    if (candidate.id == frame_id) {
      frame = &candidate;
      break;
    }
  }
  if (frame == nullptr) {
    throw std::runtime_error("preview: no frame with id " + std::to_string(frame_id));
  }
  if (frame->rgb_path.empty() || frame->semantic_path.empty() || frame->panoptic_path.empty()) {
    throw std::runtime_error("preview: frame " + std::to_string(frame_id) +
                             " lacks rgb, semantic, or panoptic artifacts");
  }
  const RgbImage rgb = ReadPngRgb(base / frame->rgb_path);
  const RgbImage semantic = ReadPngRgb(base / frame->semantic_path);
  const GrayImage panoptic = ReadPngGray8(base / frame->panoptic_path);

  const std::vector<int> stuff = taxonomy.StuffIndices();
  RgbImage panoptic_rgb(panoptic.width(), panoptic.height());
  for (int y = 0; y < panoptic.height(); ++y) {
    for (int x = 0; x < panoptic.width(); ++x) {
      const int value = panoptic.at(x, y);
      Rgb8 color{255, 0, 255};  // out-of-range ids scream
      if (value == 255) {
        color = kBlack;
      } else if (value == 0) {
        color = Rgb8{255, 255, 255};
      } else if (value <= static_cast<int>(stuff.size())) {
        color = taxonomy.category(stuff[value - 1]).color;
      }
      panoptic_rgb.at(x, y) = color;
    }
  }

  constexpr int kGutter = 4;
  const int width = rgb.width();
  const int height = rgb.height();
  RgbImage sheet(3 * width + 2 * kGutter, height, kBlack);
  const auto blit = [&](const RgbImage& panel, int x_offset) {
    for (int y = 0; y < std::min(height, panel.height()); ++y) {
      for (int x = 0; x < std::min(width, panel.width()); ++x) {
        sheet.at(x_offset + x, y) = panel.at(x, y);
      }
    }
  };
  blit(rgb, 0);
  blit(semantic, width + kGutter);
  blit(panoptic_rgb, 2 * (width + kGutter));
  WritePng(output_path, sheet);
}

}  // namespace panoptica

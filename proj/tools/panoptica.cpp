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

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "panoptica/pipeline.hpp"

namespace {

using namespace panoptica;

// Exit codes: 0 success, 1 validation violations, 2 errors.

int Generate(const GenerateOptions& options) {
  const DatasetManifest manifest = RunGenerate(options);
  std::printf("wrote %zu frames to %s\n", manifest.frames.size(),
              options.output_dir.string().c_str());
  return 0;
}

int Split(const std::string& manifest_path, const SplitSpec& spec, std::uint64_t seed) {
  DatasetManifest manifest = LoadManifest(manifest_path);
  Rng rng(DeriveSeed(seed, "split"));
  SplitDataset(manifest, spec, rng);
  SaveManifest(manifest, manifest_path);
  int train = 0, val = 0, test = 0;
  for (const FrameRecord& frame : manifest.frames) {
    if (frame.split == "train") ++train;
    else if (frame.split == "val") ++val;
    else ++test;
  }
  std::printf("tagged %d train / %d val / %d test\n", train, val, test);
  return 0;
}

int Evaluate(const EvaluateOptions& options) {
  const MetricReport report = RunEvaluate(options);
  std::fputs(FormatMetricTable(report).c_str(), stdout);
  return 0;
}

int Validate(const std::string& manifest_path) {
  const ValidationReport report = ValidateManifest(manifest_path);
  for (const std::string& violation : report.violations) {
    std::printf("violation: %s\n", violation.c_str());
  }
  std::printf("%d frames checked, %d sampled, %zu violations\n", report.frames_checked,
              report.frames_sampled, report.violations.size());
  return report.violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic panoptic-segmentation dataset toolkit"};
  app.require_subcommand(1);
  app.set_config("--config");

  GenerateOptions generate_options;
  int width = 1280, height = 720;
  double focal = 1000.0;
  CLI::App* generate = app.add_subcommand("generate", "Render a dataset from a scene");
  generate->add_option("--scene", generate_options.scene_path, "Scene descriptor JSON")
      ->required();
  generate->add_option("--out", generate_options.output_dir, "Output directory")->required();
  generate->add_option("--frames", generate_options.n_frames, "Number of frames")->required();
  generate->add_option("--seed", generate_options.seed, "Generation seed")->required();
  generate->add_option("--width", width, "Frame width");
  generate->add_option("--height", height, "Frame height");
  generate->add_option("--focal", focal, "Focal length in pixels");
  generate->add_option("--epoch-length", generate_options.tour.epoch_length,
                       "Frames between placement changes");
  generate->add_option("--threads", generate_options.threads, "Worker threads, 0 = auto");
  generate->add_flag("--depth", generate_options.write_depth, "Also write raw depth maps");

  std::string split_manifest;
  std::uint64_t split_seed = 0;
  std::vector<double> ratios;
  std::vector<int> counts;
  CLI::App* split = app.add_subcommand("split", "Tag manifest frames train/val/test");
  split->add_option("--manifest", split_manifest, "manifest.json to tag in place")->required();
  split->add_option("--seed", split_seed, "Shuffle seed")->required();
  CLI::Option* ratio_option =
      split->add_option("--ratios", ratios, "train val test fractions, e.g. 0.7 0.1 0.2")
          ->expected(3);
  split->add_option("--counts", counts, "absolute train and test counts")
      ->expected(2)
      ->excludes(ratio_option);

  ConvertOptions convert_options;
  CLI::App* convert = app.add_subcommand("convert", "Annotate external semantic masks");
  convert->add_option("--semantic-dir", convert_options.semantic_dir, "Directory of *.png masks")
      ->required();
  convert->add_option("--taxonomy", convert_options.taxonomy_path, "Taxonomy document")
      ->required();
  convert->add_option("--out", convert_options.output_dir, "Output directory")->required();
  convert->add_option("--connectivity", convert_options.connectivity, "4 or 8");

  EvaluateOptions evaluate_options;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score predictions against a dataset");
  evaluate->add_option("--manifest", evaluate_options.manifest_path, "Ground-truth manifest")
      ->required();
  evaluate->add_option("--predictions", evaluate_options.predictions_path,
                       "Panoptic-format prediction document")
      ->required();
  evaluate->add_option("--report", evaluate_options.report_path, "Write the full JSON report");
  evaluate->add_option("--split", evaluate_options.split,
                       "Split to evaluate; \"all\" for every frame");

  std::string validate_manifest;
  CLI::App* validate = app.add_subcommand("validate", "Check a dataset for inconsistencies");
  validate->add_option("--manifest", validate_manifest, "manifest.json to check")->required();

  std::string preview_manifest, preview_out;
  int preview_frame = 0;
  CLI::App* preview = app.add_subcommand("preview", "Write an rgb|semantic|panoptic sheet");
  preview->add_option("--manifest", preview_manifest, "manifest.json")->required();
  preview->add_option("--frame", preview_frame, "Frame id");
  preview->add_option("--out", preview_out, "Output PNG")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      generate_options.intrinsics = CameraIntrinsics::Default(width, height);
      generate_options.intrinsics.fx = focal;
      generate_options.intrinsics.fy = focal;
      return Generate(generate_options);
    }
    if (split->parsed()) {
      SplitSpec spec;
      if (!ratios.empty()) {
        spec.ratios = {ratios[0], ratios[1], ratios[2]};
      }
      if (!counts.empty()) {
        spec.counts = {counts[0], counts[1]};
      }
      return Split(split_manifest, spec, split_seed);
    }
    if (convert->parsed()) {
      RunConvert(convert_options);
      std::printf("wrote annotations to %s\n", convert_options.output_dir.string().c_str());
      return 0;
    }
    if (evaluate->parsed()) {
      if (evaluate_options.split == "all") {
        evaluate_options.split.clear();
      }
      return Evaluate(evaluate_options);
    }
    if (validate->parsed()) {
      return Validate(validate_manifest);
    }
    if (preview->parsed()) {
      RenderPreview(preview_manifest, preview_frame, preview_out);
      std::printf("wrote %s\n", preview_out.c_str());
      return 0;
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}

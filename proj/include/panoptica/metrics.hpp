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

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "panoptica/image.hpp"
#include "panoptica/rle.hpp"

namespace panoptica {

/// A ground-truth or predicted segment entering evaluation. Scores matter
/// only for average precision; ground truth leaves the default.
struct EvalSegment {
  int category = 0;
  RleMask mask;
  double score = 1.0;
};

/// |a∩b| / |a∪b|. Throws std::invalid_argument on mismatched dimensions or
/// when both masks are empty.
double Iou(const RleMask& a, const RleMask& b);

struct TruePositivePair {
  int gt_index = 0;
  int pred_index = 0;
  double iou = 0.0;
};

struct CategoryMatches {
  std::vector<TruePositivePair> true_positives;
  std::vector<int> false_positives;  // pred indices
  std::vector<int> false_negatives;  // gt indices
  std::vector<int> discarded;        // pred indices dropped by the void rule
};

/// Matching outcome for one image, keyed by category. Every input segment
/// lands in exactly one bucket of its category's entry.
struct MatchResult {
  std::map<int, CategoryMatches> by_category;
};

/// Matches same-category gt/pred pairs with IoU > 0.5; the threshold makes
/// matches unique because segments are disjoint within each side. Unmatched
/// predictions with more than half their area on void pixels are discarded;
/// the rest become false positives, unmatched gt become false negatives.
/// Throws std::invalid_argument on dimension mismatches, empty segments, or
/// overlap within gt or within pred.
MatchResult MatchSegments(const std::vector<EvalSegment>& gt,
                          const std::vector<EvalSegment>& pred,
                          const RleMask& void_mask);

struct PqCategory {
  int category = 0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double sq = 0.0;  // percent
  double rq = 0.0;
  double pq = 0.0;
};

struct PqReport {
  std::vector<PqCategory> categories;  // ascending category id, only those seen
  double mean_pq = 0.0;                // percent, over categories with tp+fp+fn > 0
  double mean_sq = 0.0;
  double mean_rq = 0.0;
  int images = 0;
};

/// Aggregates per-image match results into panoptic quality. For each
/// category SQ is the mean matched IoU (0 when there are no matches),
/// RQ = tp / (tp + fp/2 + fn/2), PQ = SQ * RQ.
class PqAccumulator {
 public:
  void Add(const MatchResult& matches);
  PqReport Report() const;

 private:
  struct Stats {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    double iou_sum = 0.0;
  };
  std::map<int, Stats> by_category_;
  int images_ = 0;
};

/// Pixel confusion between category-index images, where entry -1 means
/// unlabeled. Ground-truth void pixels are excluded entirely; predicted void
/// over labeled ground truth lands in a dedicated column.
class ConfusionAccumulator {
 public:
  explicit ConfusionAccumulator(int category_count);

  /// Entries must lie in [-1, category_count). Throws std::invalid_argument
  /// on dimension mismatch or out-of-range entries.
  void Add(const IndexImage& gt, const IndexImage& pred);

  int category_count() const { return category_count_; }

  /// pred_category -1 addresses the predicted-void column.
  std::int64_t count(int gt_category, int pred_category) const;

 private:
  int category_count_;
  std::vector<std::int64_t> counts_;  // (n)x(n+1), row gt, last column void
};

struct IouReport {
  std::vector<std::optional<double>> per_category;  // percent; nullopt = no gt
  double mean_percent = 0.0;                        // over categories with gt
};

IouReport MeanIou(const ConfusionAccumulator& confusion);

enum class ApMode { kBbox, kSeg };

/// COCO-style average precision in percent: IoU thresholds 0.50:0.05:0.95,
/// greedy score-ordered matching (ties by input order), at most 100
/// detections per image and category, 101-point precision interpolation,
/// averaged over thresholds and over categories with at least one gt
/// segment. Frames are parallel gt/prediction lists for the same images.
double AveragePrecision(const std::vector<std::vector<EvalSegment>>& gt_frames,
                        const std::vector<std::vector<EvalSegment>>& pred_frames,
                        ApMode mode);

/// The full evaluation summary a dataset run reports.
struct MetricReport {
  PqReport pq;
  IouReport iou;
  double ap_bbox_percent = 0.0;
  double ap_seg_percent = 0.0;
  int images = 0;
  std::int64_t gt_segments = 0;
};

}  // namespace panoptica

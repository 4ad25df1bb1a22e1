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

#include "panoptica/metrics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "panoptica/annotate.hpp"

namespace panoptica {
namespace {

constexpr double kApThresholdStart = 0.5;
constexpr double kApThresholdStep = 0.05;
constexpr int kApThresholdCount = 10;
constexpr int kApRecallPoints = 101;
constexpr int kApMaxDetections = 100;  // per image and category

/// Writes `index` into every set pixel of `mask`, flagging overlap.
void PaintLabels(const RleMask& mask, int index, std::vector<int>& labels, const char* side) {
  std::int64_t pos = 0;
  bool set = false;
  for (const std::int64_t run : mask.counts()) {
    if (set) {
      for (std::int64_t i = pos; i < pos + run; ++i) {
        if (labels[i] != -1) {
          throw std::invalid_argument(std::string("metrics: overlapping segments within ") + side);
        }
        labels[i] = index;
      }
    }
    pos += run;
    set = !set;
  }
}

std::vector<std::uint8_t> DenseFlags(const RleMask& mask) {
  std::vector<std::uint8_t> flags(static_cast<std::size_t>(mask.width()) * mask.height(), 0);
  std::int64_t pos = 0;
  bool set = false;
  for (const std::int64_t run : mask.counts()) {
    if (set) {
      std::fill(flags.begin() + pos, flags.begin() + pos + run, std::uint8_t{1});
    }
    pos += run;
    set = !set;
  }
  return flags;
}

void CheckSegments(const std::vector<EvalSegment>& segments, const RleMask& void_mask,
                   const char* side) {
  for (const EvalSegment& segment : segments) {
    if (!segment.mask.SameSizeAs(void_mask)) {
      throw std::invalid_argument(std::string("metrics: ") + side +
                                  " segment size does not match the image");
    }
    if (segment.mask.area() == 0) {
      throw std::invalid_argument(std::string("metrics: empty ") + side + " segment");
    }
  }
}

double BoxIou(const PixelBox& a, const PixelBox& b) {
  const int x1 = std::max(a.x, b.x);
  const int y1 = std::max(a.y, b.y);
  const int x2 = std::min(a.x + a.width, b.x + b.width);
  const int y2 = std::min(a.y + a.height, b.y + b.height);
  const std::int64_t inter = (x2 > x1 && y2 > y1)
                                 ? static_cast<std::int64_t>(x2 - x1) * (y2 - y1)
                                 : 0;
  const std::int64_t union_area = static_cast<std::int64_t>(a.width) * a.height +
                                  static_cast<std::int64_t>(b.width) * b.height - inter;
  return static_cast<double>(inter) / static_cast<double>(union_area);
}

struct Detection {
  int frame = 0;
  int local = 0;  // index into the per-frame category-filtered gt/pred lists
  double score = 0.0;
  std::int64_t order = 0;  // global input sequence, ties go to the earlier one
};

/// One category's worth of evaluation inputs, grouped per frame.
struct CategoryData {
  std::vector<std::vector<int>> gt_by_frame;    // indices into gt_frames[f]
  std::vector<std::vector<Detection>> det_by_frame;
  std::int64_t total_gt = 0;
};

double InterpolatedAp(std::vector<std::uint8_t>& tp_flags, std::int64_t total_gt) {
  const std::size_t n = tp_flags.size();
  std::vector<double> precision(n);
  std::vector<double> recall(n);
  std::int64_t tp = 0;
  for (std::size_t j = 0; j < n; ++j) {
    tp += tp_flags[j];
    precision[j] = static_cast<double>(tp) / static_cast<double>(j + 1);
    recall[j] = static_cast<double>(tp) / static_cast<double>(total_gt);
  }
  for (std::size_t j = n; j >= 2; --j) {
    precision[j - 2] = std::max(precision[j - 2], precision[j - 1]);
  }
  double sum = 0.0;
  std::size_t j = 0;
  for (int k = 0; k < kApRecallPoints; ++k) {
    const double level = static_cast<double>(k) / (kApRecallPoints - 1);
    while (j < n && recall[j] + 1e-9 < level) {
      ++j;
    }
    if (j < n) {
      sum += precision[j];
    }
  }
  return sum / kApRecallPoints;
}

}  // namespace

double Iou(const RleMask& a, const RleMask& b) {
  if (!a.SameSizeAs(b)) {
    throw std::invalid_argument("metrics: iou of masks with different dimensions");
  }
  const std::int64_t inter = IntersectionArea(a, b);
  const std::int64_t union_area = a.area() + b.area() - inter;
  if (union_area == 0) {
    throw std::invalid_argument("metrics: iou of two empty masks");
  }
  return static_cast<double>(inter) / static_cast<double>(union_area);
}

MatchResult MatchSegments(const std::vector<EvalSegment>& gt,
                          const std::vector<EvalSegment>& pred,
                          const RleMask& void_mask) {
  CheckSegments(gt, void_mask, "gt");
  CheckSegments(pred, void_mask, "pred");
  const std::size_t pixel_count =
      static_cast<std::size_t>(void_mask.width()) * void_mask.height();

  std::vector<int> gt_label(pixel_count, -1);
  std::vector<int> pred_label(pixel_count, -1);
  for (std::size_t i = 0; i < gt.size(); ++i) {
    PaintLabels(gt[i].mask, static_cast<int>(i), gt_label, "gt");
  }
  for (std::size_t i = 0; i < pred.size(); ++i) {
    PaintLabels(pred[i].mask, static_cast<int>(i), pred_label, "pred");
  }
  const std::vector<std::uint8_t> void_flags = DenseFlags(void_mask);

  std::map<std::pair<int, int>, std::int64_t> intersections;
  std::vector<std::int64_t> pred_on_void(pred.size(), 0);
  for (std::size_t i = 0; i < pixel_count; ++i) {
    const int g = gt_label[i];
    const int p = pred_label[i];
    if (g >= 0 && p >= 0) {
      ++intersections[{g, p}];
    }
    if (p >= 0 && void_flags[i]) {
      ++pred_on_void[p];
    }
  }

  MatchResult result;
  std::vector<bool> gt_matched(gt.size(), false);
  std::vector<bool> pred_matched(pred.size(), false);
  for (const auto& [pair, inter] : intersections) {
    const auto [g, p] = pair;
    if (gt[g].category != pred[p].category) {
      continue;
    }
    const std::int64_t union_area = gt[g].mask.area() + pred[p].mask.area() - inter;
    const double iou = static_cast<double>(inter) / static_cast<double>(union_area);
    if (iou <= 0.5) {
      continue;
    }
    if (gt_matched[g] || pred_matched[p]) {
      throw std::logic_error("metrics: matching uniqueness violated");
    }
    gt_matched[g] = true;
    pred_matched[p] = true;
    result.by_category[gt[g].category].true_positives.push_back(
        TruePositivePair{g, p, iou});
  }
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (!gt_matched[i]) {
      result.by_category[gt[i].category].false_negatives.push_back(static_cast<int>(i));
    }
  }
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred_matched[i]) {
      continue;
    }
    CategoryMatches& bucket = result.by_category[pred[i].category];
    if (pred_on_void[i] * 2 > pred[i].mask.area()) {
      bucket.discarded.push_back(static_cast<int>(i));
    } else {
      bucket.false_positives.push_back(static_cast<int>(i));
    }
  }
  return result;
}

void PqAccumulator::Add(const MatchResult& matches) {
  ++images_;
  for (const auto& [category, bucket] : matches.by_category) {
    Stats& stats = by_category_[category];
    stats.tp += static_cast<std::int64_t>(bucket.true_positives.size());
    stats.fp += static_cast<std::int64_t>(bucket.false_positives.size());
    stats.fn += static_cast<std::int64_t>(bucket.false_negatives.size());
    for (const TruePositivePair& pair : bucket.true_positives) {
      stats.iou_sum += pair.iou;
    }
  }
}

PqReport PqAccumulator::Report() const {
  PqReport report;
  report.images = images_;
  double pq_sum = 0.0;
  double sq_sum = 0.0;
  double rq_sum = 0.0;
  int counted = 0;
  for (const auto& [category, stats] : by_category_) {
    PqCategory row;
    row.category = category;
    row.tp = stats.tp;
    row.fp = stats.fp;
    row.fn = stats.fn;
    const double sq = stats.tp > 0 ? stats.iou_sum / static_cast<double>(stats.tp) : 0.0;
    const std::int64_t denom2 = 2 * stats.tp + stats.fp + stats.fn;
    const double rq =
        denom2 > 0 ? 2.0 * static_cast<double>(stats.tp) / static_cast<double>(denom2) : 0.0;
    row.sq = 100.0 * sq;
    row.rq = 100.0 * rq;
    row.pq = 100.0 * sq * rq;
    report.categories.push_back(row);
    if (stats.tp + stats.fp + stats.fn > 0) {
      pq_sum += row.pq;
      sq_sum += row.sq;
      rq_sum += row.rq;
      ++counted;
    }
  }
  if (counted > 0) {
    report.mean_pq = pq_sum / counted;
    report.mean_sq = sq_sum / counted;
    report.mean_rq = rq_sum / counted;
  }
  return report;
}

ConfusionAccumulator::ConfusionAccumulator(int category_count)
    : category_count_(category_count) {
  if (category_count <= 0) {
    throw std::invalid_argument("metrics: confusion needs a positive category count");
  }
  counts_.assign(static_cast<std::size_t>(category_count) * (category_count + 1), 0);
}

void ConfusionAccumulator::Add(const IndexImage& gt, const IndexImage& pred) {
  if (gt.width() != pred.width() || gt.height() != pred.height()) {
    throw std::invalid_argument("metrics: confusion inputs have different dimensions");
  }
  const int n = category_count_;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      const int g = gt.at(x, y);
      const int p = pred.at(x, y);
      if (g < -1 || g >= n || p < -1 || p >= n) {
        throw std::invalid_argument("metrics: category index out of range");
      }
      if (g == -1) {
        continue;  // unlabeled ground truth is not evaluated
      }
      const int column = p == -1 ? n : p;
      ++counts_[static_cast<std::size_t>(g) * (n + 1) + column];
    }
  }
}

std::int64_t ConfusionAccumulator::count(int gt_category, int pred_category) const {
  if (gt_category < 0 || gt_category >= category_count_ || pred_category < -1 ||
      pred_category >= category_count_) {
    throw std::invalid_argument("metrics: category index out of range");
  }
  const int column = pred_category == -1 ? category_count_ : pred_category;
  return counts_[static_cast<std::size_t>(gt_category) * (category_count_ + 1) + column];
}

IouReport MeanIou(const ConfusionAccumulator& confusion) {
  const int n = confusion.category_count();
  IouReport report;
  report.per_category.assign(n, std::nullopt);
  double sum = 0.0;
  int counted = 0;
  for (int c = 0; c < n; ++c) {
    std::int64_t row = 0;
    std::int64_t column = 0;
    for (int j = -1; j < n; ++j) {
      row += confusion.count(c, j);
    }
    for (int g = 0; g < n; ++g) {
      column += confusion.count(g, c);
    }
    if (row == 0) {
      continue;
    }
    const std::int64_t tp = confusion.count(c, c);
    const std::int64_t union_area = row + column - tp;
    const double iou = static_cast<double>(tp) / static_cast<double>(union_area);
    report.per_category[c] = 100.0 * iou;
    sum += 100.0 * iou;
    ++counted;
  }
  if (counted > 0) {
    report.mean_percent = sum / counted;
  }
  return report;
}

double AveragePrecision(const std::vector<std::vector<EvalSegment>>& gt_frames,
                        const std::vector<std::vector<EvalSegment>>& pred_frames,
                        ApMode mode) {
  if (gt_frames.size() != pred_frames.size()) {
    throw std::invalid_argument("metrics: gt and prediction frame counts differ");
  }
  const int frame_count = static_cast<int>(gt_frames.size());

  std::map<int, CategoryData> categories;
  std::int64_t order = 0;
  for (int f = 0; f < frame_count; ++f) {
    for (std::size_t i = 0; i < gt_frames[f].size(); ++i) {
      CategoryData& data = categories[gt_frames[f][i].category];
      data.gt_by_frame.resize(frame_count);
      data.gt_by_frame[f].push_back(static_cast<int>(i));
      ++data.total_gt;
    }
  }
  for (int f = 0; f < frame_count; ++f) {
    std::map<int, std::vector<Detection>> frame_dets;
    for (std::size_t i = 0; i < pred_frames[f].size(); ++i) {
      const EvalSegment& segment = pred_frames[f][i];
      const auto it = categories.find(segment.category);
      if (it == categories.end()) {
        continue;  // no gt anywhere for this category, cannot affect AP
      }
      frame_dets[segment.category].push_back(
          Detection{f, static_cast<int>(i), segment.score, order++});
    }
    for (auto& [category, dets] : frame_dets) {
      std::stable_sort(dets.begin(), dets.end(), [](const Detection& a, const Detection& b) {
        if (a.score != b.score) {
          return a.score > b.score;
        }
        return a.order < b.order;
      });
      if (static_cast<int>(dets.size()) > kApMaxDetections) {
        dets.resize(kApMaxDetections);
      }
      CategoryData& data = categories[category];
      data.det_by_frame.resize(frame_count);
      data.det_by_frame[f] = std::move(dets);
    }
  }

  double category_sum = 0.0;
  int category_count = 0;
  for (auto& [category, data] : categories) {
    data.det_by_frame.resize(frame_count);
    std::vector<Detection> all;
    for (const auto& dets : data.det_by_frame) {
      all.insert(all.end(), dets.begin(), dets.end());
    }
    std::sort(all.begin(), all.end(), [](const Detection& a, const Detection& b) {
      if (a.score != b.score) {
        return a.score > b.score;
      }
      return a.order < b.order;
    });

    // IoU between each retained detection and each gt of its frame.
    std::vector<std::vector<double>> overlap(all.size());
    for (std::size_t d = 0; d < all.size(); ++d) {
      const Detection& det = all[d];
      const EvalSegment& p = pred_frames[det.frame][det.local];
      const std::vector<int>& gts = data.gt_by_frame[det.frame];
      overlap[d].resize(gts.size());
      for (std::size_t g = 0; g < gts.size(); ++g) {
        const EvalSegment& q = gt_frames[det.frame][gts[g]];
        if (mode == ApMode::kSeg) {
          overlap[d][g] = Iou(p.mask, q.mask);
        } else {
          overlap[d][g] = BoxIou(MaskToBbox(p.mask), MaskToBbox(q.mask));
        }
      }
    }

    double threshold_sum = 0.0;
    for (int t = 0; t < kApThresholdCount; ++t) {
      const double threshold = kApThresholdStart + kApThresholdStep * t;
      std::vector<std::vector<bool>> gt_used(frame_count);
      for (int f = 0; f < frame_count; ++f) {
        gt_used[f].assign(data.gt_by_frame[f].size(), false);
      }
      std::vector<std::uint8_t> tp_flags(all.size(), 0);
      for (std::size_t d = 0; d < all.size(); ++d) {
        const int f = all[d].frame;
        int best = -1;
        double best_iou = -1.0;
        for (std::size_t g = 0; g < data.gt_by_frame[f].size(); ++g) {
          if (gt_used[f][g]) {
            continue;
          }
          if (overlap[d][g] > best_iou) {
            best_iou = overlap[d][g];
            best = static_cast<int>(g);
          }
        }
        if (best >= 0 && best_iou >= threshold) {
          gt_used[f][best] = true;
          tp_flags[d] = 1;
        }
      }
      threshold_sum += InterpolatedAp(tp_flags, data.total_gt);
    }
    category_sum += threshold_sum / kApThresholdCount;
    ++category_count;
  }
  if (category_count == 0) {
    return 0.0;
  }
  return 100.0 * category_sum / category_count;
}

}  // namespace panoptica

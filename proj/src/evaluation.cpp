/* Copyright (c) 2026 The MutualGuide Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */
#include "mutualguide/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mutualguide {

namespace {

std::vector<std::size_t> by_descending_score(std::span<const Detection> detections) {
  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detections[a].score > detections[b].score;
  });
  return order;
}

}  // namespace

std::vector<std::size_t> nms_indices(std::span<const Detection> detections, double iou_threshold) {
  std::vector<std::size_t> kept;
  for (std::size_t idx : by_descending_score(detections)) {
    const Detection& d = detections[idx];
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
      const Detection& other = detections[k];
      return other.class_id == d.class_id && other.image_id == d.image_id &&
             iou(other.box, d.box) > iou_threshold;
    });
    if (!suppressed) kept.push_back(idx);
  }
  return kept;
}

std::vector<Detection> nms(std::span<const Detection> detections, double iou_threshold) {
  std::vector<Detection> out;
  for (std::size_t idx : nms_indices(detections, iou_threshold)) out.push_back(detections[idx]);
  return out;
}

std::vector<double> coco_iou_thresholds() {
  std::vector<double> t;
  for (int k = 0; k < 10; ++k) t.push_back(0.5 + 0.05 * k);
  return t;
}

namespace {

struct ScoredMatch {
  double score;
  bool true_positive;
  bool ignored;
};

bool outside(const std::optional<AreaRange>& range, const Box& box) {
  if (!range) return false;
  const double a = area(box);
  return a < range->min_area || a > range->max_area;
}

// Class AP from matches gathered over all images; `positives` is the count
// of non-ignored ground truth.
double interpolated_ap(std::vector<ScoredMatch> matches, std::size_t positives) {
  std::stable_sort(matches.begin(), matches.end(),
                   [](const ScoredMatch& a, const ScoredMatch& b) { return a.score > b.score; });
  std::vector<double> recall;
  std::vector<double> precision;
  double tp = 0.0;
  double fp = 0.0;
  for (const ScoredMatch& m : matches) {
    if (m.ignored) continue;
    (m.true_positive ? tp : fp) += 1.0;
    recall.push_back(tp / static_cast<double>(positives));
    precision.push_back(tp / (tp + fp));
  }
  for (std::size_t k = precision.size(); k-- > 1;) {
    precision[k - 1] = std::max(precision[k - 1], precision[k]);
  }
  double sum = 0.0;
  constexpr int kRecallPoints = 101;
  for (int k = 0; k < kRecallPoints; ++k) {
    const double r = static_cast<double>(k) / (kRecallPoints - 1);
    const auto it = std::lower_bound(recall.begin(), recall.end(), r);
    if (it != recall.end()) sum += precision[static_cast<std::size_t>(it - recall.begin())];
  }
  return sum / kRecallPoints;
}

// Mean class AP, or nullopt when no class has non-ignored ground truth.
std::optional<double> evaluate(std::span<const Detection> detections,
                               std::span<const GroundTruth> ground_truth, double iou_threshold,
                               std::size_t max_detections, const std::optional<AreaRange>& area) {
  // (class, image) -> indices
  std::map<std::pair<int, std::int64_t>, std::vector<std::size_t>> gt_cells;
  std::map<std::pair<int, std::int64_t>, std::vector<std::size_t>> det_cells;
  std::set<int> classes;
  for (std::size_t g = 0; g < ground_truth.size(); ++g) {
    gt_cells[{ground_truth[g].class_id, ground_truth[g].image_id}].push_back(g);
    classes.insert(ground_truth[g].class_id);
  }
  for (std::size_t d = 0; d < detections.size(); ++d) {
    det_cells[{detections[d].class_id, detections[d].image_id}].push_back(d);
  }

  const double threshold = std::min(iou_threshold, 1.0 - 1e-10);
  double class_sum = 0.0;
  std::size_t class_count = 0;
  for (int cls : classes) {
    std::vector<ScoredMatch> matches;
    std::size_t positives = 0;
    std::set<std::int64_t> images;
    for (const auto& [key, _] : gt_cells) {
      if (key.first == cls) images.insert(key.second);
    }
    for (const auto& [key, _] : det_cells) {
      if (key.first == cls) images.insert(key.second);
    }
    for (std::int64_t image : images) {
      std::vector<std::size_t> gts;
      if (auto it = gt_cells.find({cls, image}); it != gt_cells.end()) gts = it->second;
      std::vector<bool> gt_ignored;
      std::stable_partition(gts.begin(), gts.end(), [&](std::size_t g) {
        return !outside(area, ground_truth[g].box);
      });
      for (std::size_t g : gts) {
        gt_ignored.push_back(outside(area, ground_truth[g].box));
        if (!gt_ignored.back()) ++positives;
      }

      std::vector<std::size_t> dets;
      if (auto it = det_cells.find({cls, image}); it != det_cells.end()) dets = it->second;
      std::stable_sort(dets.begin(), dets.end(), [&](std::size_t a, std::size_t b) {
        return detections[a].score > detections[b].score;
      });
      if (dets.size() > max_detections) dets.resize(max_detections);

      std::vector<bool> gt_taken(gts.size(), false);
      for (std::size_t d : dets) {
        double best = threshold;
        std::optional<std::size_t> match;
        for (std::size_t g = 0; g < gts.size(); ++g) {
          if (gt_taken[g]) continue;
          // a match on real ground truth is never traded for an ignored one
          if (match && !gt_ignored[*match] && gt_ignored[g]) break;
          const double overlap = iou(detections[d].box, ground_truth[gts[g]].box);
          if (overlap < best) continue;
          best = overlap;
          match = g;
        }
        if (match) {
          gt_taken[*match] = true;
          matches.push_back({detections[d].score, true, gt_ignored[*match]});
        } else {
          matches.push_back({detections[d].score, false, outside(area, detections[d].box)});
        }
      }
    }
    if (positives == 0) continue;
    class_sum += interpolated_ap(std::move(matches), positives);
    ++class_count;
  }
  if (class_count == 0) return std::nullopt;
  return class_sum / static_cast<double>(class_count);
}

void check_inputs(std::span<const Detection> detections, std::span<const GroundTruth> gt) {
  if (gt.empty()) throw std::invalid_argument("average precision needs ground truth");
  for (const Detection& d : detections) {
    if (!(d.score >= 0.0 && d.score <= 1.0)) {
      throw std::invalid_argument("detection scores must lie in [0, 1]");
    }
  }
}

}  // namespace

double average_precision_at(std::span<const Detection> detections,
                            std::span<const GroundTruth> ground_truth, double iou_threshold,
                            std::size_t max_detections, std::optional<AreaRange> area) {
  check_inputs(detections, ground_truth);
  return evaluate(detections, ground_truth, iou_threshold, max_detections, area).value_or(0.0);
}

EvalResult average_precision(std::span<const Detection> detections,
                             std::span<const GroundTruth> ground_truth,
                             const EvalOptions& options) {
  check_inputs(detections, ground_truth);
  if (options.iou_thresholds.empty()) throw std::invalid_argument("no IoU thresholds given");

  EvalResult result;
  double sum = 0.0;
  for (double t : options.iou_thresholds) {
    const double ap =
        evaluate(detections, ground_truth, t, options.max_detections, std::nullopt).value_or(0.0);
    result.per_threshold.emplace_back(t, ap);
    sum += ap;
  }
  result.ap = sum / static_cast<double>(options.iou_thresholds.size());
  result.ap50 = evaluate(detections, ground_truth, 0.5, options.max_detections, std::nullopt)
                    .value_or(0.0);
  result.ap75 = evaluate(detections, ground_truth, 0.75, options.max_detections, std::nullopt)
                    .value_or(0.0);

  if (options.area_bands) {
    const auto band = [&](AreaRange range) -> std::optional<double> {
      double band_sum = 0.0;
      for (double t : options.iou_thresholds) {
        auto ap = evaluate(detections, ground_truth, t, options.max_detections, range);
        if (!ap) return std::nullopt;
        band_sum += *ap;
      }
      return band_sum / static_cast<double>(options.iou_thresholds.size());
    };
    result.ap_small = band({0.0, 32.0 * 32.0});
    result.ap_medium = band({32.0 * 32.0, 96.0 * 96.0});
    result.ap_large = band({96.0 * 96.0, 1e10});
  }
  return result;
}

MisalignmentReport misalignment_rate(std::span<const Detection> detections,
                                     std::span<const GroundTruth> ground_truth,
                                     double loc_threshold, double score_threshold) {
  MisalignmentReport report;
  report.flags.assign(detections.size(), false);
  for (std::size_t d = 0; d < detections.size(); ++d) {
    const Detection& det = detections[d];
    if (det.score < score_threshold) continue;
    ++report.confident;
    double best = 0.0;
    for (const GroundTruth& gt : ground_truth) {
      if (gt.class_id != det.class_id || gt.image_id != det.image_id) continue;
      best = std::max(best, iou(det.box, gt.box));
    }
    if (best < loc_threshold) {
      report.flags[d] = true;
      ++report.misaligned;
    }
  }
  if (report.confident > 0) {
    report.rate = static_cast<double>(report.misaligned) / static_cast<double>(report.confident);
  }
  return report;
}

}  // namespace mutualguide

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
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mutualguide/geometry.hpp"

namespace mutualguide {

struct Detection {
  Box box;
  int class_id = 0;
  double score = 0.0;  // [0, 1]
  std::int64_t image_id = 0;
};

struct GroundTruth {
  Box box;
  int class_id = 0;
  std::int64_t image_id = 0;
};

// Greedy per-class NMS. Detections are visited by descending score (ties:
// input order); a detection is dropped when its IoU with an already kept
// detection of the same class and image exceeds `iou_threshold`. The result
// is in visiting order.
std::vector<Detection> nms(std::span<const Detection> detections, double iou_threshold);
// Indices into the input instead of copies.
std::vector<std::size_t> nms_indices(std::span<const Detection> detections, double iou_threshold);

// 0.50, 0.55, ..., 0.95
std::vector<double> coco_iou_thresholds();

struct AreaRange {
  double min_area = 0.0;
  double max_area = 1e10;
};

struct EvalOptions {
  std::vector<double> iou_thresholds = coco_iou_thresholds();
  std::size_t max_detections = 100;  // per image, by score
  bool area_bands = false;           // also fill ap_small / ap_medium / ap_large
};

struct EvalResult {
  double ap = 0.0;    // mean over the configured thresholds
  double ap50 = 0.0;
  double ap75 = 0.0;
  std::vector<std::pair<double, double>> per_threshold;  // (threshold, AP)
  // Unset when the band holds no ground truth.
  std::optional<double> ap_small;   // area in [0, 32^2]
  std::optional<double> ap_medium;  // area in [32^2, 96^2]
  std::optional<double> ap_large;   // area >= 96^2
};

// COCO-style average precision: per image and class, detections (highest
// score first) greedily take the best still-unmatched ground truth with
// IoU >= threshold; precision is made monotone and sampled at 101 recall
// points; AP is averaged over classes that have ground truth. AP50/AP75 are
// always evaluated, whether or not they are in `iou_thresholds`. Throws
// std::invalid_argument on empty ground truth.
EvalResult average_precision(std::span<const Detection> detections,
                             std::span<const GroundTruth> ground_truth,
                             const EvalOptions& options = {});

// AP at a single IoU threshold, optionally restricted to an area band.
double average_precision_at(std::span<const Detection> detections,
                            std::span<const GroundTruth> ground_truth, double iou_threshold,
                            std::size_t max_detections = 100,
                            std::optional<AreaRange> area = std::nullopt);

struct MisalignmentReport {
  double rate = 0.0;
  // Per input detection: scored at or above the score threshold but its
  // best same-class ground truth overlaps below the localization threshold.
  std::vector<bool> flags;
  std::size_t confident = 0;
  std::size_t misaligned = 0;
};

// Fraction of confident detections (score >= score_threshold) that are
// poorly localized (best same-class, same-image IoU < loc_threshold).
// 0 when no detection is confident.
MisalignmentReport misalignment_rate(std::span<const Detection> detections,
                                     std::span<const GroundTruth> ground_truth,
                                     double loc_threshold = 0.75, double score_threshold = 0.5);

}  // namespace mutualguide

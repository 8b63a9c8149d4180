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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mutualguide/geometry.hpp"

namespace mutualguide {

class Label {
 public:
  enum class Kind : std::uint8_t { kNegative, kIgnored, kPositive };

  constexpr Label() = default;

  static constexpr Label Negative() { return Label(Kind::kNegative, 0); }
  static constexpr Label Ignored() { return Label(Kind::kIgnored, 0); }
  static constexpr Label Positive(std::size_t object) { return Label(Kind::kPositive, object); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_positive() const { return kind_ == Kind::kPositive; }
  constexpr bool is_ignored() const { return kind_ == Kind::kIgnored; }
  constexpr bool is_negative() const { return kind_ == Kind::kNegative; }

  // Object index of a Positive label; throws std::logic_error otherwise.
  std::size_t object() const;

  // Wire encoding: object index for Positive, -1 Negative, -2 Ignored.
  std::int64_t encode() const;
  static Label Decode(std::int64_t code);

  constexpr bool operator==(const Label&) const = default;

 private:
  constexpr Label(Kind kind, std::size_t object) : kind_(kind), object_(object) {}

  Kind kind_ = Kind::kNegative;
  std::size_t object_ = 0;
};

struct ObjectCounts {
  std::size_t positives = 0;  // N_p
  std::size_t ignored = 0;    // N_i
  bool operator==(const ObjectCounts&) const = default;
};

struct MatchingConfig {
  double pos_threshold = 0.5;
  double neg_threshold = 0.4;
  double sigma = 2.0;

  // 1 >= pos_threshold >= neg_threshold >= 0 and sigma > 1.
  void validate() const;
};

// Labels for one task plus the per-object picks made before cross-object
// conflicts were resolved.
struct TaskLabels {
  std::vector<Label> labels;
  // selected[j]: anchors chosen Positive for object j before merging, in
  // rank order.
  std::vector<std::vector<std::size_t>> selected;
  std::vector<std::string> warnings;
};

struct Assignment {
  std::vector<Label> classification;
  std::vector<Label> localization;  // only Positive or Negative
  std::vector<ObjectCounts> counts;
  std::vector<std::string> warnings;
};

// Number of Positive labels per object.
std::vector<std::size_t> positives_per_object(const std::vector<Label>& labels,
                                              std::size_t object_count);
std::size_t count_positives(const std::vector<Label>& labels);

// IoU_anchor threshold matching. Anchors at or above pos_threshold for an
// object are its positives; an object with none takes its highest-IoU anchor.
// An anchor claimed by several objects goes to the highest IoU (ties: lowest
// object index). Non-positive anchors whose best IoU is at least
// neg_threshold are Ignored, the rest Negative. counts[j] holds the
// pre-merge positive count and the Ignored anchors whose best object is j.
// Both label vectors are identical.
Assignment static_assign(const IoUMatrix& iou_anchor, const MatchingConfig& cfg);

// iou^((sigma - p) / sigma). Never below iou, equal to it at p = 0.
// Throws std::invalid_argument for sigma <= 1 or arguments outside [0, 1].
double amplified_iou(double iou, double p, double sigma);

UnitMatrix amplified_iou_matrix(const IoUMatrix& iou_anchor, const ScoreMatrix& scores,
                                double sigma);

// Per object: the N_p anchors with the highest IoU_regressed become Positive,
// the next N_i Ignored (ranking ties go to the lower anchor index). Across
// objects Positive beats Ignored beats Negative; a Positive contested by
// several objects goes to the highest IoU_regressed.
TaskLabels localize_to_classify(const IoUMatrix& iou_anchor, const IoUMatrix& iou_regressed,
                                const MatchingConfig& cfg);
TaskLabels localize_to_classify(const IoUMatrix& iou_regressed,
                                const std::vector<ObjectCounts>& counts);

// Per object: the N_p anchors with the highest amplified IoU become Positive,
// everything else Negative.
TaskLabels classify_to_localize(const IoUMatrix& iou_anchor, const ScoreMatrix& scores,
                                const MatchingConfig& cfg);
TaskLabels classify_to_localize(const IoUMatrix& iou_anchor, const ScoreMatrix& scores,
                                const std::vector<ObjectCounts>& counts, double sigma);

// Classification labels from localize_to_classify, localization labels from
// classify_to_localize, budgets from static_assign. The two label sets may
// disagree on an anchor.
Assignment mutual_guidance_assign(const IoUMatrix& iou_anchor, const IoUMatrix& iou_regressed,
                                  const ScoreMatrix& scores, const MatchingConfig& cfg);

}  // namespace mutualguide

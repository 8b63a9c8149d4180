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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mutualguide/anchors.hpp"
#include "mutualguide/assignment.hpp"
#include "mutualguide/evaluation.hpp"
#include "mutualguide/geometry.hpp"

namespace mutualguide {

struct SceneSpec {
  int image_width = 320;
  int image_height = 320;
  std::size_t min_objects = 1;
  std::size_t max_objects = 5;
  double min_size = 32.0;   // box side lengths, pixels
  double max_size = 192.0;
  // Cap on the IoU between any two generated objects; unset disables it.
  std::optional<double> max_pairwise_iou = 0.3;
  int num_classes = 20;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 1000;  // placement retries per object

  void validate() const;
};

struct Scene {
  int image_width = 320;
  int image_height = 320;
  std::vector<Box> boxes;
  std::vector<int> class_ids;
};

// Deterministic in the spec (seed included). Throws std::runtime_error when
// an object cannot be placed within the retry budget.
Scene synth_scene(const SceneSpec& spec);

// progress -> ceiling * progress^exponent; monotone with value 0 at 0.
struct GainCurve {
  double exponent = 1.0;
  double ceiling = 1.0;

  double operator()(double t) const { return ceiling * std::pow(t, exponent); }
};

struct TrajectoryConfig {
  std::size_t steps = 10;
  GainCurve localization_gain;                 // interpolation weight towards the object
  GainCurve score_gain{1.0, 0.95};             // ceiling of the classification scores
  double noise_amplitude = 0.05;               // corner jitter, fraction of the box side
  double misalignment_fraction = 0.0;          // anchors whose score ignores their IoU
  double max_regression_violations = 0.05;     // share of anchors allowed IoU_regressed < IoU_anchor

  void validate() const;
  // Progress of step k: k / (steps - 1), or 0 for a single step.
  double progress(std::size_t step) const;
};

struct TrajectorySnapshot {
  std::vector<Box> regressed_boxes;  // one per anchor
  ScoreMatrix scores;                // anchors x objects
  double progress = 0.0;
};

// Simulated network output at training progress t. Anchors overlapping an
// object move from their own box (t = 0) towards the best-IoU object by the
// localization gain, with jitter that scales with that gain; anchors that
// overlap nothing stay put. Scores are the score gain times IoU_regressed,
// except for injected misaligned anchors, whose best-object score is the
// gain times (1 - IoU_regressed). Fewer than max_regression_violations of the
// anchors end with IoU_regressed below IoU_anchor on their best object.
// Noise directions and the misaligned set depend on the seed only, so a
// trajectory evaluated at increasing t is smooth.
TrajectorySnapshot synth_predictions(const Scene& scene, std::span<const Box> anchors,
                                     const TrajectoryConfig& cfg, double t, std::uint64_t seed);

IoUMatrix regressed_iou(const TrajectorySnapshot& snapshot, const Scene& scene);

// Square prior of side 4 * stride around each point, so point grids can be
// fed through synth_predictions.
std::vector<Box> point_prior_boxes(const PointSet& points);

enum class Strategy {
  kStatic,
  kLocalizeToClassify,       // dynamic N_p / N_i budgets
  kLocalizeToClassifyFixed,  // fixed thresholds applied to IoU_regressed
  kClassifyToLocalize,
  kMutual,
};

std::string to_string(Strategy s);

struct TrajectoryStep {
  double progress = 0.0;
  // Positives picked per object before cross-object merging, summed: the
  // count the strategy's budget controls. For the fixed-threshold variant it
  // is the sum of N_p of threshold matching on IoU_regressed.
  std::size_t selected_positives = 0;
  std::size_t classification_positives = 0;  // after merging
  std::size_t localization_positives = 0;
  Assignment assignment;
};

struct TrajectoryResult {
  Strategy strategy = Strategy::kStatic;
  std::vector<TrajectoryStep> steps;

  std::vector<std::size_t> positive_counts() const;
};

// Runs one strategy over cfg.steps evenly spaced progress values.
// `fixed_thresholds` overrides the thresholds used by the fixed variant;
// otherwise `matching` is used.
TrajectoryResult run_trajectory(const Scene& scene, std::span<const Box> anchors,
                                const TrajectoryConfig& cfg, const MatchingConfig& matching,
                                Strategy strategy, std::uint64_t seed,
                                std::optional<MatchingConfig> fixed_thresholds = std::nullopt);

// Detections a detector would emit after one update driven by `assignment`:
// classification Positives raise the anchor's score towards 1 by
// `update_rate`, Negatives scale it down by (1 - update_rate), Ignored
// anchors keep it; localization Positives move the regressed box towards
// their object by `update_rate`. Detections scoring below `min_score` are
// dropped.
std::vector<Detection> label_consistent_detections(const Scene& scene,
                                                   const TrajectorySnapshot& snapshot,
                                                   const Assignment& assignment,
                                                   double update_rate = 0.5,
                                                   double min_score = 0.05);

std::vector<GroundTruth> scene_ground_truth(const Scene& scene, std::int64_t image_id = 0);

}  // namespace mutualguide

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
#include "mutualguide/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "random.hpp"

namespace mutualguide {

namespace {

constexpr std::uint64_t kSceneStream = 1;
constexpr std::uint64_t kPredictionStream = 2;

double quantize(double v, double step) { return std::round(v / step) * step; }

}  // namespace

void SceneSpec::validate() const {
  if (image_width <= 0 || image_height <= 0) {
    throw std::invalid_argument("scene: image dimensions must be positive");
  }
  if (min_objects == 0 || min_objects > max_objects) {
    throw std::invalid_argument("scene: object count range must satisfy 1 <= min <= max");
  }
  if (!(min_size > 0.0) || min_size > max_size) {
    throw std::invalid_argument("scene: size range must satisfy 0 < min <= max");
  }
  if (max_size > image_width || max_size > image_height) {
    throw std::invalid_argument("scene: size range exceeds the image");
  }
  if (max_pairwise_iou && !(*max_pairwise_iou >= 0.0 && *max_pairwise_iou <= 1.0)) {
    throw std::invalid_argument("scene: pairwise IoU cap must lie in [0, 1]");
  }
  if (num_classes < 1) throw std::invalid_argument("scene: at least one class is required");
  if (max_attempts == 0) throw std::invalid_argument("scene: retry budget must be positive");
}

Scene synth_scene(const SceneSpec& spec) {
  spec.validate();
  detail::Rng rng(spec.seed, kSceneStream);
  Scene scene;
  scene.image_width = spec.image_width;
  scene.image_height = spec.image_height;
  const std::size_t count =
      spec.min_objects + rng.below(spec.max_objects - spec.min_objects + 1);

  // integer corners and 1/16 px sizes keep every coordinate exact
  for (std::size_t k = 0; k < count; ++k) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < spec.max_attempts && !placed; ++attempt) {
      const double w =
          std::clamp(quantize(rng.uniform(spec.min_size, spec.max_size), 1.0 / 16), spec.min_size,
                     spec.max_size);
      const double h =
          std::clamp(quantize(rng.uniform(spec.min_size, spec.max_size), 1.0 / 16), spec.min_size,
                     spec.max_size);
      const double x = std::floor(rng.uniform(0.0, spec.image_width - w + 1.0));
      const double y = std::floor(rng.uniform(0.0, spec.image_height - h + 1.0));
      const int cls = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.num_classes)));
      if (x + w > spec.image_width || y + h > spec.image_height) continue;
      const Box candidate(x, y, x + w, y + h);
      if (spec.max_pairwise_iou) {
        const bool crowded = std::any_of(scene.boxes.begin(), scene.boxes.end(), [&](const Box& b) {
          return iou(b, candidate) > *spec.max_pairwise_iou;
        });
        if (crowded) continue;
      }
      scene.boxes.push_back(candidate);
      scene.class_ids.push_back(cls);
      placed = true;
    }
    if (!placed) {
      throw std::runtime_error("scene: could not place object " + std::to_string(k) + " within " +
                               std::to_string(spec.max_attempts) + " attempts");
    }
  }
  return scene;
}

void TrajectoryConfig::validate() const {
  if (steps == 0) throw std::invalid_argument("trajectory: steps must be positive");
  for (const GainCurve* curve : {&localization_gain, &score_gain}) {
    if (!(curve->exponent > 0.0) || !(curve->ceiling > 0.0 && curve->ceiling <= 1.0)) {
      throw std::invalid_argument("trajectory: gain curves need exponent > 0 and ceiling in (0, 1]");
    }
  }
  if (!(noise_amplitude >= 0.0 && noise_amplitude <= 0.25)) {
    throw std::invalid_argument("trajectory: noise amplitude must lie in [0, 0.25]");
  }
  if (!(misalignment_fraction >= 0.0 && misalignment_fraction <= 1.0)) {
    throw std::invalid_argument("trajectory: misalignment fraction must lie in [0, 1]");
  }
  if (!(max_regression_violations >= 0.0 && max_regression_violations <= 0.1)) {
    throw std::invalid_argument("trajectory: regression violation share must lie in [0, 0.1]");
  }
}

double TrajectoryConfig::progress(std::size_t step) const {
  if (steps <= 1) return 0.0;
  return static_cast<double>(step) / static_cast<double>(steps - 1);
}

namespace {

Box lerp(const Box& from, const Box& to, double w) {
  return Box((1.0 - w) * from.x_min() + w * to.x_min(), (1.0 - w) * from.y_min() + w * to.y_min(),
             (1.0 - w) * from.x_max() + w * to.x_max(), (1.0 - w) * from.y_max() + w * to.y_max());
}

}  // namespace

TrajectorySnapshot synth_predictions(const Scene& scene, std::span<const Box> anchors,
                                     const TrajectoryConfig& cfg, double t, std::uint64_t seed) {
  cfg.validate();
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("trajectory progress must lie in [0, 1]");
  const IoUMatrix iou_anchor = iou_matrix(anchors, scene.boxes);
  const std::size_t objects = scene.boxes.size();
  const double w = cfg.localization_gain(t);
  const double s = cfg.score_gain(t);
  const double jitter_scale = cfg.noise_amplitude * w;
  const auto budget = static_cast<std::size_t>(
      std::floor(cfg.max_regression_violations * static_cast<double>(anchors.size())));

  detail::Rng rng(seed, kPredictionStream);
  TrajectorySnapshot snap;
  snap.progress = t;
  snap.regressed_boxes.reserve(anchors.size());
  std::vector<double> values(anchors.size() * objects, 0.0);
  std::size_t violations = 0;

  for (std::size_t i = 0; i < anchors.size(); ++i) {
    // fixed number of draws per anchor keeps the streams aligned across t
    double noise[4];
    for (double& n : noise) n = rng.uniform(-1.0, 1.0);
    const double score_jitter = rng.uniform(-1.0, 1.0);
    const bool misaligned_draw = rng.uniform() < cfg.misalignment_fraction;

    const auto row = iou_anchor.row(i);
    const auto best_it = std::max_element(row.begin(), row.end());
    const auto best = static_cast<std::size_t>(best_it - row.begin());
    const Box& anchor = anchors[i];
    if (*best_it == 0.0) {
      snap.regressed_boxes.push_back(anchor);
      continue;
    }

    const Box& target = scene.boxes[best];
    // misaligned anchors do not learn to regress
    const Box clean = misaligned_draw ? anchor : lerp(anchor, target, w);
    const double dx = jitter_scale * clean.width();
    const double dy = jitter_scale * clean.height();
    const Box noisy(clean.x_min() + dx * noise[0], clean.y_min() + dy * noise[1],
                    clean.x_max() + dx * noise[2], clean.y_max() + dy * noise[3]);
    Box chosen = noisy;
    if (iou(noisy, target) < *best_it) {
      if (violations < budget) {
        ++violations;
      } else {
        chosen = iou(clean, target) >= *best_it ? clean : anchor;
      }
    }
    snap.regressed_boxes.push_back(chosen);

    for (std::size_t j = 0; j < objects; ++j) {
      const double overlap = iou(chosen, scene.boxes[j]);
      if (overlap == 0.0) continue;
      double score = s * (overlap + cfg.noise_amplitude * w * score_jitter);
      if (misaligned_draw && j == best) score = s * (1.0 - overlap);
      values[i * objects + j] = std::clamp(score, 0.0, 1.0);
    }
  }
  snap.scores = ScoreMatrix(anchors.size(), objects, std::move(values));
  return snap;
}

IoUMatrix regressed_iou(const TrajectorySnapshot& snapshot, const Scene& scene) {
  return iou_matrix(snapshot.regressed_boxes, scene.boxes);
}

std::vector<Box> point_prior_boxes(const PointSet& points) {
  std::vector<Box> priors;
  priors.reserve(points.size());
  for (const Point& p : points.points) {
    const double half = 2.0 * p.stride;
    priors.emplace_back(p.x - half, p.y - half, p.x + half, p.y + half);
  }
  return priors;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kStatic:
      return "static";
    case Strategy::kLocalizeToClassify:
      return "l2c";
    case Strategy::kLocalizeToClassifyFixed:
      return "l2c-fixed";
    case Strategy::kClassifyToLocalize:
      return "c2l";
    case Strategy::kMutual:
      return "mutual";
  }
  return "unknown";
}

std::vector<std::size_t> TrajectoryResult::positive_counts() const {
  std::vector<std::size_t> counts;
  counts.reserve(steps.size());
  for (const TrajectoryStep& step : steps) counts.push_back(step.selected_positives);
  return counts;
}

namespace {

std::size_t sum_selected(const TaskLabels& labels) {
  std::size_t n = 0;
  for (const auto& s : labels.selected) n += s.size();
  return n;
}

std::size_t sum_budgets(const std::vector<ObjectCounts>& counts) {
  std::size_t n = 0;
  for (const ObjectCounts& c : counts) n += c.positives;
  return n;
}

void append(std::vector<std::string>& to, const std::vector<std::string>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

}  // namespace

TrajectoryResult run_trajectory(const Scene& scene, std::span<const Box> anchors,
                                const TrajectoryConfig& cfg, const MatchingConfig& matching,
                                Strategy strategy, std::uint64_t seed,
                                std::optional<MatchingConfig> fixed_thresholds) {
  cfg.validate();
  matching.validate();
  const MatchingConfig fixed = fixed_thresholds.value_or(matching);
  const IoUMatrix iou_anchor = iou_matrix(anchors, scene.boxes);
  const Assignment base = static_assign(iou_anchor, matching);

  TrajectoryResult result;
  result.strategy = strategy;
  for (std::size_t k = 0; k < cfg.steps; ++k) {
    const double t = cfg.progress(k);
    TrajectoryStep step;
    step.progress = t;
    switch (strategy) {
      case Strategy::kStatic: {
        step.assignment = base;
        step.selected_positives = sum_budgets(base.counts);
        break;
      }
      case Strategy::kLocalizeToClassifyFixed: {
        const TrajectorySnapshot snap = synth_predictions(scene, anchors, cfg, t, seed);
        step.assignment = static_assign(regressed_iou(snap, scene), fixed);
        step.selected_positives = sum_budgets(step.assignment.counts);
        break;
      }
      case Strategy::kLocalizeToClassify: {
        const TrajectorySnapshot snap = synth_predictions(scene, anchors, cfg, t, seed);
        TaskLabels cls = localize_to_classify(regressed_iou(snap, scene), base.counts);
        step.selected_positives = sum_selected(cls);
        step.assignment = base;
        step.assignment.classification = std::move(cls.labels);
        append(step.assignment.warnings, cls.warnings);
        break;
      }
      case Strategy::kClassifyToLocalize: {
        const TrajectorySnapshot snap = synth_predictions(scene, anchors, cfg, t, seed);
        TaskLabels loc = classify_to_localize(iou_anchor, snap.scores, base.counts, matching.sigma);
        step.selected_positives = sum_selected(loc);
        step.assignment = base;
        step.assignment.localization = std::move(loc.labels);
        append(step.assignment.warnings, loc.warnings);
        break;
      }
      case Strategy::kMutual: {
        const TrajectorySnapshot snap = synth_predictions(scene, anchors, cfg, t, seed);
        TaskLabels cls = localize_to_classify(regressed_iou(snap, scene), base.counts);
        TaskLabels loc = classify_to_localize(iou_anchor, snap.scores, base.counts, matching.sigma);
        step.selected_positives = sum_selected(cls);
        step.assignment.counts = base.counts;
        step.assignment.warnings = base.warnings;
        step.assignment.classification = std::move(cls.labels);
        step.assignment.localization = std::move(loc.labels);
        append(step.assignment.warnings, cls.warnings);
        append(step.assignment.warnings, loc.warnings);
        break;
      }
    }
    step.classification_positives = count_positives(step.assignment.classification);
    step.localization_positives = count_positives(step.assignment.localization);
    result.steps.push_back(std::move(step));
  }
  return result;
}

std::vector<Detection> label_consistent_detections(const Scene& scene,
                                                   const TrajectorySnapshot& snapshot,
                                                   const Assignment& assignment,
                                                   double update_rate, double min_score) {
  const std::size_t rows = snapshot.regressed_boxes.size();
  if (assignment.classification.size() != rows || assignment.localization.size() != rows ||
      snapshot.scores.rows() != rows || snapshot.scores.cols() != scene.boxes.size()) {
    throw std::invalid_argument("snapshot, assignment and scene sizes disagree");
  }
  if (!(update_rate >= 0.0 && update_rate <= 1.0)) {
    throw std::invalid_argument("update rate must lie in [0, 1]");
  }

  std::vector<Detection> out;
  for (std::size_t i = 0; i < rows; ++i) {
    const Label cls = assignment.classification[i];
    const auto row = snapshot.scores.row(i);
    std::size_t object = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) -
                                                  row.begin());
    double score = row[object];
    if (cls.is_positive()) {
      object = cls.object();
      score = row[object] + update_rate * (1.0 - row[object]);
    } else if (cls.is_negative()) {
      score *= 1.0 - update_rate;
    }
    if (score < min_score) continue;

    Box box = snapshot.regressed_boxes[i];
    const Label loc = assignment.localization[i];
    if (loc.is_positive()) box = lerp(box, scene.boxes[loc.object()], update_rate);
    out.push_back(Detection{box, scene.class_ids[object], score, 0});
  }
  return out;
}

std::vector<GroundTruth> scene_ground_truth(const Scene& scene, std::int64_t image_id) {
  std::vector<GroundTruth> gt;
  for (std::size_t j = 0; j < scene.boxes.size(); ++j) {
    gt.push_back(GroundTruth{scene.boxes[j], scene.class_ids[j], image_id});
  }
  return gt;
}

}  // namespace mutualguide

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
#include "mutualguide/fcos_assignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "label_merge.hpp"

namespace mutualguide {

double centerness(double x, double y, const Box& gt) {
  if (!gt.contains_strictly(x, y)) {
    throw std::invalid_argument("centerness: point must lie strictly inside the box");
  }
  const double l = x - gt.x_min();
  const double r = gt.x_max() - x;
  const double t = y - gt.y_min();
  const double b = gt.y_max() - y;
  return std::sqrt((std::min(l, r) / std::max(l, r)) * (std::min(t, b) / std::max(t, b)));
}

namespace {

double larger_side(const Box& b) { return std::max(b.width(), b.height()); }

bool in_center_region(const Point& p, const Box& gt, double radius) {
  const double reach = radius * p.stride;
  return std::abs(p.x - gt.center_x()) < reach && std::abs(p.y - gt.center_y()) < reach;
}

void check_point_matrix(const UnitMatrix& m, const PointSet& points, std::size_t objects,
                        const char* what) {
  if (m.rows() != points.size() || m.cols() != objects) {
    throw std::invalid_argument(std::string(what) + " must be points x objects");
  }
}

}  // namespace

PointAssignment fcos_assign_original(const PointSet& points, std::span<const Box> objects,
                                     std::optional<double> center_sampling_radius) {
  if (objects.empty()) throw std::invalid_argument("fcos_assign_original: no objects");
  if (points.points.empty()) throw std::invalid_argument("fcos_assign_original: no points");
  if (center_sampling_radius && !(*center_sampling_radius > 0.0)) {
    throw std::invalid_argument("centre sampling radius must be positive");
  }

  PointAssignment out;
  out.classification.assign(points.size(), Label::Negative());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points.points[i];
    std::optional<std::size_t> owner;
    for (std::size_t j = 0; j < objects.size(); ++j) {
      const Box& gt = objects[j];
      if (!gt.contains_strictly(p.x, p.y)) continue;
      if (!p.scale_range.matches(larger_side(gt))) continue;
      if (center_sampling_radius && !in_center_region(p, gt, *center_sampling_radius)) continue;
      if (!owner || area(gt) < area(objects[*owner])) owner = j;
    }
    if (owner) out.classification[i] = Label::Positive(*owner);
  }

  std::vector<std::size_t> owned = positives_per_object(out.classification, objects.size());
  for (std::size_t j = 0; j < objects.size(); ++j) {
    if (owned[j] > 0) continue;
    const Box& gt = objects[j];
    const double side = larger_side(gt);
    // (tier, squared distance to the box centre, index)
    std::vector<std::tuple<int, double, std::size_t>> order;
    order.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Point& p = points.points[i];
      const bool inside = gt.contains_strictly(p.x, p.y);
      const int tier = inside ? (p.scale_range.matches(side) ? 0 : 1) : 2;
      const double dx = p.x - gt.center_x();
      const double dy = p.y - gt.center_y();
      order.emplace_back(tier, dx * dx + dy * dy, i);
    }
    std::sort(order.begin(), order.end());
    bool placed = false;
    for (const auto& [tier, dist, i] : order) {
      const Label current = out.classification[i];
      if (current.is_positive()) {
        if (owned[current.object()] < 2) continue;
        --owned[current.object()];
      }
      out.classification[i] = Label::Positive(j);
      ++owned[j];
      placed = true;
      break;
    }
    if (!placed) {
      out.warnings.push_back("object " + std::to_string(j) + " could not be given any point");
    }
  }

  out.counts = std::move(owned);
  out.localization = out.classification;
  return out;
}

std::vector<std::vector<std::size_t>> fcos_eligible_points(const PointSet& points,
                                                           std::span<const Box> objects,
                                                           const PointAssignment& original) {
  if (original.classification.size() != points.size() || original.counts.size() != objects.size()) {
    throw std::invalid_argument("original point assignment does not match points and objects");
  }
  std::vector<std::vector<std::size_t>> eligible(objects.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points.points[i];
    const Label label = original.classification[i];
    for (std::size_t j = 0; j < objects.size(); ++j) {
      const bool matched = objects[j].contains_strictly(p.x, p.y) &&
                           p.scale_range.matches(larger_side(objects[j]));
      const bool original_positive = label.is_positive() && label.object() == j;
      if (matched || original_positive) eligible[j].push_back(i);
    }
  }
  return eligible;
}

namespace {

TaskLabels rank_eligible(const UnitMatrix& scores, const std::vector<std::size_t>& budgets,
                         std::vector<std::vector<std::size_t>> eligible) {
  TaskLabels out;
  std::vector<detail::ObjectPicks> picks(budgets.size());
  for (std::size_t j = 0; j < budgets.size(); ++j) {
    if (budgets[j] > eligible[j].size()) {
      out.warnings.push_back("object " + std::to_string(j) + ": requested " +
                             std::to_string(budgets[j]) + " ranked points but only " +
                             std::to_string(eligible[j].size()) + " are eligible; took all");
    }
    picks[j].positives = detail::top_k(scores.column(j), eligible[j], budgets[j]);
    picks[j].eligible = std::move(eligible[j]);
    // an empty eligible list means "all rows" to the merge
    if (picks[j].eligible.empty()) picks[j].positives.clear();
  }
  out.labels = detail::merge_picks(scores, picks, out.warnings);
  for (auto& p : picks) out.selected.push_back(std::move(p.positives));
  return out;
}

}  // namespace

TaskLabels fcos_localize_to_classify(const PointSet& points, std::span<const Box> objects,
                                     const PointAssignment& original,
                                     const IoUMatrix& iou_regressed) {
  check_point_matrix(iou_regressed, points, objects.size(), "IoU_regressed");
  return rank_eligible(iou_regressed, original.counts,
                       fcos_eligible_points(points, objects, original));
}

UnitMatrix amplified_centerness_matrix(const PointSet& points, std::span<const Box> objects,
                                       const ScoreMatrix& scores, double sigma) {
  check_point_matrix(scores, points, objects.size(), "classification scores");
  UnitMatrix out(points.size(), objects.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points.points[i];
    for (std::size_t j = 0; j < objects.size(); ++j) {
      if (!objects[j].contains_strictly(p.x, p.y)) continue;
      out.set(i, j, amplified_iou(centerness(p.x, p.y, objects[j]), scores(i, j), sigma));
    }
  }
  return out;
}

TaskLabels fcos_classify_to_localize(const PointSet& points, std::span<const Box> objects,
                                     const PointAssignment& original, const ScoreMatrix& scores,
                                     double sigma) {
  return rank_eligible(amplified_centerness_matrix(points, objects, scores, sigma),
                       original.counts, fcos_eligible_points(points, objects, original));
}

PointAssignment fcos_mutual_assign(const PointSet& points, std::span<const Box> objects,
                                   const PointAssignment& original,
                                   const IoUMatrix& iou_regressed, const ScoreMatrix& scores,
                                   double sigma) {
  TaskLabels cls = fcos_localize_to_classify(points, objects, original, iou_regressed);
  TaskLabels loc = fcos_classify_to_localize(points, objects, original, scores, sigma);
  PointAssignment out;
  out.classification = std::move(cls.labels);
  out.localization = std::move(loc.labels);
  out.counts = original.counts;
  out.warnings = original.warnings;
  out.warnings.insert(out.warnings.end(), cls.warnings.begin(), cls.warnings.end());
  out.warnings.insert(out.warnings.end(), loc.warnings.begin(), loc.warnings.end());
  return out;
}

}  // namespace mutualguide

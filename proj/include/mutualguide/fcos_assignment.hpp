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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mutualguide/anchors.hpp"
#include "mutualguide/assignment.hpp"
#include "mutualguide/geometry.hpp"

namespace mutualguide {

struct PointAssignment {
  std::vector<Label> classification;
  std::vector<Label> localization;
  std::vector<std::size_t> counts;  // N_p per object
  std::vector<std::string> warnings;
};

// FCOS centerness of a point strictly inside `gt`:
// sqrt(min(l,r)/max(l,r) * min(t,b)/max(t,b)). Throws std::invalid_argument
// for points on or outside the box boundary.
double centerness(double x, double y, const Box& gt);

// Centre-sampling radius used when the option is switched on without a value.
inline constexpr double kDefaultCenterSamplingRadius = 1.5;

// Original FCOS assignment. A point is a candidate for an object when it lies
// strictly inside the box, its level's scale range covers the object's larger
// side and, with centre sampling, it is within radius * stride of the box
// centre on both axes. Points inside several candidates go to the smallest
// box. An object left without points takes the nearest point to its centre,
// preferring scale-matched in-box points, then any in-box point, then any
// point. Classification and localization labels are identical.
PointAssignment fcos_assign_original(const PointSet& points, std::span<const Box> objects,
                                     std::optional<double> center_sampling_radius = std::nullopt);

// Points object j may be ranked over by the guided variants: in-box,
// scale-matched points plus the points the original assignment gave it.
std::vector<std::vector<std::size_t>> fcos_eligible_points(const PointSet& points,
                                                           std::span<const Box> objects,
                                                           const PointAssignment& original);

// Per object, the original N_p eligible points with the highest IoU_regressed
// become Positive; there is no Ignored band.
TaskLabels fcos_localize_to_classify(const PointSet& points, std::span<const Box> objects,
                                     const PointAssignment& original,
                                     const IoUMatrix& iou_regressed);

// centerness^((sigma - p) / sigma) for points strictly inside the box, 0
// elsewhere.
UnitMatrix amplified_centerness_matrix(const PointSet& points, std::span<const Box> objects,
                                       const ScoreMatrix& scores, double sigma);

// Per object, the original N_p eligible points with the highest amplified
// centerness become Positive.
TaskLabels fcos_classify_to_localize(const PointSet& points, std::span<const Box> objects,
                                     const PointAssignment& original, const ScoreMatrix& scores,
                                     double sigma);

PointAssignment fcos_mutual_assign(const PointSet& points, std::span<const Box> objects,
                                   const PointAssignment& original,
                                   const IoUMatrix& iou_regressed, const ScoreMatrix& scores,
                                   double sigma);

}  // namespace mutualguide

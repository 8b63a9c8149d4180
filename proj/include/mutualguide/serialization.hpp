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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mutualguide/anchors.hpp"
#include "mutualguide/assignment.hpp"
#include "mutualguide/evaluation.hpp"
#include "mutualguide/fcos_assignment.hpp"
#include "mutualguide/simulator.hpp"

namespace mutualguide {

inline constexpr int kFormatVersion = 1;

// Label arrays use Label::encode(): object index, -1 Negative, -2 Ignored.
//
// {"format_version": 1, "mode": "anchors", "strategy": ..., "image_id": ...,
//  "anchor_count": N, "classification": [...], "localization": [...],
//  "per_object": [{"object", "n_p", "n_i", "classification_positives",
//                  "localization_positives"}], "warnings": [...]}
nlohmann::json assignment_to_json(const Assignment& a, const std::string& strategy,
                                  std::int64_t image_id);
Assignment assignment_from_json(const nlohmann::json& j);

// Same shape with "mode": "points", "point_count" and no "n_i".
nlohmann::json point_assignment_to_json(const PointAssignment& a, const std::string& strategy,
                                        std::int64_t image_id);

// Anchors positive in one label set but not the other, per task.
struct LabelDiff {
  std::vector<std::size_t> only_baseline;
  std::vector<std::size_t> only_candidate;
  std::size_t both = 0;
};
LabelDiff diff_positives(const std::vector<Label>& baseline, const std::vector<Label>& candidate);

nlohmann::json diff_to_json(const std::vector<Label>& baseline_cls,
                            const std::vector<Label>& baseline_loc,
                            const std::vector<Label>& candidate_cls,
                            const std::vector<Label>& candidate_loc, std::size_t object_count,
                            const std::string& baseline, const std::string& candidate,
                            std::int64_t image_id);

nlohmann::json eval_result_to_json(const EvalResult& r);

// Configuration blocks. Missing keys keep their defaults; unknown keys are
// rejected so typos surface.
AnchorGridSpec anchor_grid_from_json(const nlohmann::json& j);
nlohmann::json anchor_grid_to_json(const AnchorGridSpec& spec);
MatchingConfig matching_from_json(const nlohmann::json& j, MatchingConfig base = {});
SceneSpec scene_spec_from_json(const nlohmann::json& j, SceneSpec base = {});
TrajectoryConfig trajectory_from_json(const nlohmann::json& j, TrajectoryConfig base = {});

}  // namespace mutualguide

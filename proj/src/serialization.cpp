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
#include "mutualguide/serialization.hpp"

#include <initializer_list>
#include <stdexcept>

namespace mutualguide {

using nlohmann::json;

namespace {

json encode_labels(const std::vector<Label>& labels) {
  json out = json::array();
  for (const Label& l : labels) out.push_back(l.encode());
  return out;
}

std::vector<Label> decode_labels(const json& j) {
  std::vector<Label> labels;
  labels.reserve(j.size());
  for (const json& v : j) labels.push_back(Label::Decode(v.get<std::int64_t>()));
  return labels;
}

void reject_unknown(const json& j, const char* block, std::initializer_list<const char*> known) {
  if (!j.is_object()) throw std::invalid_argument(std::string(block) + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::invalid_argument(std::string(block) + ": unknown key \"" + key + "\"");
  }
}

template <typename T>
void read(const json& j, const char* key, T& into) {
  if (auto it = j.find(key); it != j.end()) into = it->get<T>();
}

}  // namespace

json assignment_to_json(const Assignment& a, const std::string& strategy, std::int64_t image_id) {
  const auto cls = positives_per_object(a.classification, a.counts.size());
  const auto loc = positives_per_object(a.localization, a.counts.size());
  json per_object = json::array();
  for (std::size_t j = 0; j < a.counts.size(); ++j) {
    per_object.push_back({{"object", j},
                          {"n_p", a.counts[j].positives},
                          {"n_i", a.counts[j].ignored},
                          {"classification_positives", cls[j]},
                          {"localization_positives", loc[j]}});
  }
  return {{"format_version", kFormatVersion},
          {"mode", "anchors"},
          {"strategy", strategy},
          {"image_id", image_id},
          {"anchor_count", a.classification.size()},
          {"classification", encode_labels(a.classification)},
          {"localization", encode_labels(a.localization)},
          {"per_object", per_object},
          {"warnings", a.warnings}};
}

Assignment assignment_from_json(const json& j) {
  if (j.at("format_version").get<int>() != kFormatVersion) {
    throw std::invalid_argument("unsupported assignment format_version");
  }
  if (j.at("mode").get<std::string>() != "anchors") {
    throw std::invalid_argument("expected an anchor assignment");
  }
  Assignment a;
  a.classification = decode_labels(j.at("classification"));
  a.localization = decode_labels(j.at("localization"));
  for (const json& o : j.at("per_object")) {
    a.counts.push_back({o.at("n_p").get<std::size_t>(), o.at("n_i").get<std::size_t>()});
  }
  a.warnings = j.at("warnings").get<std::vector<std::string>>();
  return a;
}

json point_assignment_to_json(const PointAssignment& a, const std::string& strategy,
                              std::int64_t image_id) {
  const auto cls = positives_per_object(a.classification, a.counts.size());
  const auto loc = positives_per_object(a.localization, a.counts.size());
  json per_object = json::array();
  for (std::size_t j = 0; j < a.counts.size(); ++j) {
    per_object.push_back({{"object", j},
                          {"n_p", a.counts[j]},
                          {"classification_positives", cls[j]},
                          {"localization_positives", loc[j]}});
  }
  return {{"format_version", kFormatVersion},
          {"mode", "points"},
          {"strategy", strategy},
          {"image_id", image_id},
          {"point_count", a.classification.size()},
          {"classification", encode_labels(a.classification)},
          {"localization", encode_labels(a.localization)},
          {"per_object", per_object},
          {"warnings", a.warnings}};
}

LabelDiff diff_positives(const std::vector<Label>& baseline, const std::vector<Label>& candidate) {
  if (baseline.size() != candidate.size()) {
    throw std::invalid_argument("cannot diff label sets of different lengths");
  }
  LabelDiff d;
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    const bool b = baseline[i].is_positive();
    const bool c = candidate[i].is_positive();
    if (b && c) {
      ++d.both;
    } else if (b) {
      d.only_baseline.push_back(i);
    } else if (c) {
      d.only_candidate.push_back(i);
    }
  }
  return d;
}

json diff_to_json(const std::vector<Label>& baseline_cls, const std::vector<Label>& baseline_loc,
                  const std::vector<Label>& candidate_cls, const std::vector<Label>& candidate_loc,
                  std::size_t object_count, const std::string& baseline,
                  const std::string& candidate, std::int64_t image_id) {
  const auto task = [](const LabelDiff& d) {
    return json{{"only_baseline", d.only_baseline},
                {"only_candidate", d.only_candidate},
                {"only_baseline_count", d.only_baseline.size()},
                {"only_candidate_count", d.only_candidate.size()},
                {"both_count", d.both}};
  };
  const auto b_cls = positives_per_object(baseline_cls, object_count);
  const auto b_loc = positives_per_object(baseline_loc, object_count);
  const auto c_cls = positives_per_object(candidate_cls, object_count);
  const auto c_loc = positives_per_object(candidate_loc, object_count);
  json per_object = json::array();
  for (std::size_t j = 0; j < object_count; ++j) {
    per_object.push_back({{"object", j},
                          {"baseline_classification_positives", b_cls[j]},
                          {"candidate_classification_positives", c_cls[j]},
                          {"baseline_localization_positives", b_loc[j]},
                          {"candidate_localization_positives", c_loc[j]}});
  }
  // anchors the candidate labels differently for the two tasks
  std::size_t contradictory = 0;
  for (std::size_t i = 0; i < candidate_cls.size(); ++i) {
    if (candidate_cls[i].is_positive() != candidate_loc[i].is_positive()) ++contradictory;
  }
  return {{"format_version", kFormatVersion},
          {"image_id", image_id},
          {"baseline", baseline},
          {"candidate", candidate},
          {"classification", task(diff_positives(baseline_cls, candidate_cls))},
          {"localization", task(diff_positives(baseline_loc, candidate_loc))},
          {"candidate_cross_task_disagreements", contradictory},
          {"per_object", per_object}};
}

json eval_result_to_json(const EvalResult& r) {
  json curve = json::array();
  for (const auto& [t, ap] : r.per_threshold) curve.push_back({{"iou_threshold", t}, {"ap", ap}});
  json out = {{"format_version", kFormatVersion},
              {"ap", r.ap},
              {"ap50", r.ap50},
              {"ap75", r.ap75},
              {"per_threshold", curve}};
  const auto band = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  if (r.ap_small || r.ap_medium || r.ap_large) {
    out["ap_small"] = band(r.ap_small);
    out["ap_medium"] = band(r.ap_medium);
    out["ap_large"] = band(r.ap_large);
  }
  return out;
}

AnchorGridSpec anchor_grid_from_json(const json& j) {
  reject_unknown(j, "grid", {"image_width", "image_height", "levels"});
  AnchorGridSpec spec = AnchorGridSpec::Default();
  read(j, "image_width", spec.image_width);
  read(j, "image_height", spec.image_height);
  if (auto it = j.find("levels"); it != j.end()) {
    spec.levels.clear();
    for (const json& level : *it) {
      reject_unknown(level, "grid level", {"stride", "scales", "aspect_ratios"});
      LevelSpec l;
      l.stride = level.at("stride").get<int>();
      l.scales = level.at("scales").get<std::vector<double>>();
      l.aspect_ratios = level.value("aspect_ratios", std::vector<double>{1.0});
      spec.levels.push_back(std::move(l));
    }
  }
  spec.validate();
  return spec;
}

json anchor_grid_to_json(const AnchorGridSpec& spec) {
  json levels = json::array();
  for (const LevelSpec& l : spec.levels) {
    levels.push_back({{"stride", l.stride}, {"scales", l.scales}, {"aspect_ratios", l.aspect_ratios}});
  }
  return {{"image_width", spec.image_width}, {"image_height", spec.image_height}, {"levels", levels}};
}

MatchingConfig matching_from_json(const json& j, MatchingConfig base) {
  reject_unknown(j, "matching", {"pos_threshold", "neg_threshold", "sigma"});
  read(j, "pos_threshold", base.pos_threshold);
  read(j, "neg_threshold", base.neg_threshold);
  read(j, "sigma", base.sigma);
  base.validate();
  return base;
}

SceneSpec scene_spec_from_json(const json& j, SceneSpec base) {
  reject_unknown(j, "scene",
                 {"image_width", "image_height", "min_objects", "max_objects", "min_size",
                  "max_size", "max_pairwise_iou", "num_classes", "max_attempts"});
  read(j, "image_width", base.image_width);
  read(j, "image_height", base.image_height);
  read(j, "min_objects", base.min_objects);
  read(j, "max_objects", base.max_objects);
  read(j, "min_size", base.min_size);
  read(j, "max_size", base.max_size);
  read(j, "num_classes", base.num_classes);
  read(j, "max_attempts", base.max_attempts);
  if (auto it = j.find("max_pairwise_iou"); it != j.end()) {
    base.max_pairwise_iou = it->is_null() ? std::nullopt : std::optional<double>(it->get<double>());
  }
  base.validate();
  return base;
}

TrajectoryConfig trajectory_from_json(const json& j, TrajectoryConfig base) {
  reject_unknown(j, "trajectory",
                 {"steps", "localization_gain", "score_gain", "noise_amplitude",
                  "misalignment_fraction", "max_regression_violations"});
  read(j, "steps", base.steps);
  read(j, "noise_amplitude", base.noise_amplitude);
  read(j, "misalignment_fraction", base.misalignment_fraction);
  read(j, "max_regression_violations", base.max_regression_violations);
  for (auto [key, curve] : {std::pair{"localization_gain", &base.localization_gain},
                            std::pair{"score_gain", &base.score_gain}}) {
    if (auto it = j.find(key); it != j.end()) {
      reject_unknown(*it, key, {"exponent", "ceiling"});
      read(*it, "exponent", curve->exponent);
      read(*it, "ceiling", curve->ceiling);
    }
  }
  base.validate();
  return base;
}

}  // namespace mutualguide

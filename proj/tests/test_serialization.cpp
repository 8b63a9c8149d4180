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
#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include <json.hpp>

#include "mutualguide/annotations.hpp"
#include "mutualguide/assignment.hpp"
#include "mutualguide/serialization.hpp"

namespace mg = mutualguide;
using nlohmann::json;

TEST(Serialization, AssignmentRoundTrip) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> code(-2, 3);
  std::uniform_int_distribution<std::size_t> small(0, 9);
  for (int trial = 0; trial < 200; ++trial) {
    mg::Assignment a;
    const std::size_t n = 1 + small(rng);
    for (std::size_t i = 0; i < n; ++i) {
      a.classification.push_back(mg::Label::Decode(code(rng)));
      const int loc = code(rng);
      a.localization.push_back(loc == -2 ? mg::Label::Negative() : mg::Label::Decode(loc));
    }
    for (int j = 0; j < 4; ++j) a.counts.push_back({small(rng), small(rng)});
    if (trial % 3 == 0) a.warnings.push_back("object 0: note");
    const json j = mg::assignment_to_json(a, "mutual", trial);
    EXPECT_EQ(j.at("format_version"), 1);
    EXPECT_EQ(j.at("mode"), "anchors");
    const mg::Assignment b = mg::assignment_from_json(json::parse(j.dump()));
    EXPECT_EQ(b.classification, a.classification);
    EXPECT_EQ(b.localization, a.localization);
    EXPECT_EQ(b.counts, a.counts);
    EXPECT_EQ(b.warnings, a.warnings);
  }
}

TEST(Serialization, RejectsWrongVersion) {
  json j = mg::assignment_to_json({{mg::Label::Negative()}, {mg::Label::Negative()}, {}, {}}, "static", 1);
  j["format_version"] = 2;
  EXPECT_THROW(mg::assignment_from_json(j), std::exception);
}

TEST(Serialization, DiffCountsDisagreements) {
  using L = mg::Label;
  const std::vector<L> base = {L::Positive(0), L::Positive(0), L::Negative()};
  const std::vector<L> cand = {L::Positive(0), L::Negative(), L::Positive(0)};
  const mg::LabelDiff d = mg::diff_positives(base, cand);
  EXPECT_EQ(d.only_baseline, (std::vector<std::size_t>{1}));
  EXPECT_EQ(d.only_candidate, (std::vector<std::size_t>{2}));
  EXPECT_EQ(d.both, 1u);
}

TEST(Serialization, ConfigReadersRejectUnknownKeys) {
  EXPECT_THROW(mg::matching_from_json(json{{"pos_treshold", 0.6}}), std::invalid_argument);
  EXPECT_THROW(mg::scene_spec_from_json(json{{"objects", 3}}), std::invalid_argument);
  EXPECT_THROW(mg::trajectory_from_json(json{{"step", 3}}), std::invalid_argument);
  const mg::MatchingConfig m = mg::matching_from_json(json{{"sigma", 3.0}});
  EXPECT_EQ(m.sigma, 3.0);
  EXPECT_EQ(m.pos_threshold, 0.5);
}

TEST(Serialization, AnchorGridRoundTrip) {
  const mg::AnchorGridSpec spec = mg::AnchorGridSpec::Default();
  const mg::AnchorGridSpec back = mg::anchor_grid_from_json(mg::anchor_grid_to_json(spec));
  EXPECT_EQ(back.image_width, spec.image_width);
  ASSERT_EQ(back.levels.size(), spec.levels.size());
  for (std::size_t l = 0; l < spec.levels.size(); ++l) {
    EXPECT_EQ(back.levels[l].stride, spec.levels[l].stride);
    EXPECT_EQ(back.levels[l].scales, spec.levels[l].scales);
    EXPECT_EQ(back.levels[l].aspect_ratios, spec.levels[l].aspect_ratios);
  }
}

TEST(Annotations, ParsesCocoSubset) {
  const json doc = json::parse(R"({
    "images": [{"id": 5, "width": 100, "height": 80}],
    "categories": [{"id": 2, "name": "cat"}],
    "annotations": [{"image_id": 5, "category_id": 2, "bbox": [10, 20, 30, 40]}]})");
  const mg::AnnotationSet set = mg::parse_coco_annotations(doc);
  ASSERT_EQ(set.annotations.size(), 1u);
  EXPECT_EQ(set.annotations[0].box, mg::Box(10, 20, 40, 60));
  EXPECT_EQ(set.annotations[0].class_id, 2);
  EXPECT_EQ(set.annotations[0].image_id, 5);
}

TEST(Annotations, ErrorNamesTheRecord) {
  const json doc = json::parse(R"({
    "images": [{"id": 5, "width": 100, "height": 80}],
    "categories": [{"id": 2, "name": "cat"}],
    "annotations": [{"image_id": 5, "category_id": 2, "bbox": [10, 20, 30, 40]},
                    {"image_id": 5, "category_id": 2, "bbox": [10, 20, 0, 40]}]})");
  try {
    mg::parse_coco_annotations(doc);
    FAIL() << "expected an error";
  } catch (const mg::AnnotationError& e) {
    EXPECT_NE(std::string(e.what()).find("annotations[1]"), std::string::npos) << e.what();
  }
}

TEST(Annotations, DetectionImagesMustExist) {
  const json anns = json::parse(R"({"images": [{"id": 1, "width": 10, "height": 10}],
    "categories": [{"id": 1, "name": "x"}], "annotations": []})");
  const json dets = json::parse(R"([{"image_id": 3, "category_id": 1, "bbox": [0, 0, 2, 2], "score": 0.5}])");
  const auto set = mg::parse_coco_annotations(anns);
  const auto parsed = mg::parse_coco_detections(dets);
  try {
    mg::check_detection_images(parsed, set);
    FAIL() << "expected an error";
  } catch (const mg::AnnotationError& e) {
    EXPECT_NE(std::string(e.what()).find('3'), std::string::npos) << e.what();
  }
}

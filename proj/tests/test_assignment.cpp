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

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "fixtures/boat.hpp"
#include "mutualguide/anchors.hpp"
#include "mutualguide/assignment.hpp"
#include "mutualguide/simulator.hpp"
#include "oracles.hpp"

namespace mg = mutualguide;
using mg::Label;
using mg::testing::anchor;

namespace {

mg::UnitMatrix column(std::vector<double> values) { return mg::UnitMatrix::FromColumns({values}); }

std::set<std::size_t> positives_of(const std::vector<Label>& labels, std::size_t object) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].is_positive() && labels[i].object() == object) out.insert(i);
  }
  return out;
}

std::set<std::size_t> with_kind(const std::vector<Label>& labels, Label::Kind kind) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].kind() == kind) out.insert(i);
  }
  return out;
}

std::set<std::size_t> names(std::initializer_list<char> letters) {
  std::set<std::size_t> out;
  for (char c : letters) out.insert(anchor(c));
  return out;
}

}  // namespace

TEST(Label, EncodeDecode) {
  EXPECT_EQ(Label::Negative().encode(), -1);
  EXPECT_EQ(Label::Ignored().encode(), -2);
  EXPECT_EQ(Label::Positive(3).encode(), 3);
  for (std::int64_t code : {-2, -1, 0, 7}) EXPECT_EQ(Label::Decode(code).encode(), code);
  EXPECT_THROW(Label::Decode(-3), std::invalid_argument);
  EXPECT_THROW(static_cast<void>(Label::Ignored().object()), std::logic_error);
}

TEST(MatchingConfig, Validate) {
  EXPECT_NO_THROW((mg::MatchingConfig{}.validate()));
  EXPECT_NO_THROW((mg::MatchingConfig{0.5, 0.5, 2.0}.validate()));
  EXPECT_THROW((mg::MatchingConfig{0.4, 0.5, 2.0}.validate()), std::invalid_argument);
  EXPECT_THROW((mg::MatchingConfig{1.1, 0.4, 2.0}.validate()), std::invalid_argument);
  EXPECT_THROW((mg::MatchingConfig{0.5, 0.4, 1.0}.validate()), std::invalid_argument);
}

TEST(StaticAssign, ThresholdExample) {
  const mg::Assignment a = mg::static_assign(column({0.6, 0.45, 0.3}), {});
  EXPECT_EQ(a.classification,
            (std::vector<Label>{Label::Positive(0), Label::Ignored(), Label::Negative()}));
  ASSERT_EQ(a.counts.size(), 1u);
  EXPECT_EQ(a.counts[0], (mg::ObjectCounts{1, 1}));
}

TEST(StaticAssign, FallbackToBestAnchor) {
  const mg::Assignment a = mg::static_assign(column({0.3, 0.2, 0.1}), {});
  EXPECT_EQ(a.classification,
            (std::vector<Label>{Label::Positive(0), Label::Negative(), Label::Negative()}));
  EXPECT_EQ(a.counts[0], (mg::ObjectCounts{1, 0}));
}

TEST(StaticAssign, PositiveThresholdIsInclusive) {
  const mg::Assignment a = mg::static_assign(column({0.5, 0.4, 0.39}), {});
  EXPECT_EQ(a.classification,
            (std::vector<Label>{Label::Positive(0), Label::Ignored(), Label::Negative()}));
}

TEST(StaticAssign, BoatFixture) {
  const mg::Assignment a =
      mg::static_assign(mg::testing::boat_column(mg::testing::kBoatIouAnchor), {});
  EXPECT_EQ(a.counts[0], (mg::ObjectCounts{6, 3}));
  EXPECT_EQ(positives_of(a.classification, 0), names({'A', 'B', 'D', 'E', 'F', 'G'}));
  EXPECT_EQ(with_kind(a.classification, Label::Kind::kIgnored), names({'C', 'H', 'I'}));
}

TEST(StaticAssign, LocalizationDropsIgnored) {
  const mg::Assignment a = mg::static_assign(column({0.6, 0.45, 0.3}), {});
  EXPECT_EQ(a.localization,
            (std::vector<Label>{Label::Positive(0), Label::Negative(), Label::Negative()}));
}

TEST(StaticAssign, ContestedAnchorGoesToHigherIou) {
  // Anchor 0 clears the threshold for both objects; object 1 overlaps more.
  const mg::UnitMatrix m = mg::UnitMatrix::FromColumns({{0.6, 0.7, 0.1}, {0.8, 0.0, 0.55}});
  const mg::Assignment a = mg::static_assign(m, {});
  EXPECT_EQ(a.classification[0], Label::Positive(1));
  EXPECT_EQ(a.classification[1], Label::Positive(0));
  EXPECT_EQ(a.classification[2], Label::Positive(1));
  EXPECT_EQ(a.counts[0].positives, 2u);
  EXPECT_EQ(a.counts[1].positives, 2u);
}

TEST(StaticAssign, ContestedTieGoesToLowerObject) {
  const mg::UnitMatrix m = mg::UnitMatrix::FromColumns({{0.7, 0.6, 0.1}, {0.7, 0.1, 0.6}});
  const mg::Assignment a = mg::static_assign(m, {});
  EXPECT_EQ(a.classification[0], Label::Positive(0));
  EXPECT_EQ(a.classification[1], Label::Positive(0));
  EXPECT_EQ(a.classification[2], Label::Positive(1));
}

TEST(StaticAssign, RepairTakesFromObjectWithSpare) {
  // Object 1 loses its only candidate, anchor 0, on the tie; object 0 holds
  // two positives, so object 1 gets anchor 0 back.
  const mg::UnitMatrix m = mg::UnitMatrix::FromColumns({{0.7, 0.6}, {0.7, 0.55}});
  const mg::Assignment a = mg::static_assign(m, {});
  EXPECT_EQ(a.classification[0], Label::Positive(1));
  EXPECT_EQ(a.classification[1], Label::Positive(0));
  EXPECT_TRUE(a.warnings.empty());
}

TEST(StaticAssign, EveryObjectKeepsAPositive) {
  // Both objects' only candidate is anchor 0; object 0 wins it, object 1
  // falls back to its best remaining anchor.
  const mg::UnitMatrix m = mg::UnitMatrix::FromColumns({{0.9, 0.1, 0.0}, {0.3, 0.0, 0.2}});
  const mg::Assignment a = mg::static_assign(m, {});
  EXPECT_EQ(positives_per_object(a.classification, 2), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(a.classification[0], Label::Positive(0));
  EXPECT_EQ(a.classification[2], Label::Positive(1));
}

TEST(StaticAssign, EqualThresholdsHaveNoIgnoredBand) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> values(40);
    for (double& v : values) v = u(rng);
    const mg::UnitMatrix m(20, 2, values);
    const mg::Assignment a = mg::static_assign(m, {0.5, 0.5, 2.0});
    EXPECT_TRUE(with_kind(a.classification, Label::Kind::kIgnored).empty());
    for (std::size_t i = 0; i < 20; ++i) {
      const bool above = m(i, 0) >= 0.5 || m(i, 1) >= 0.5;
      EXPECT_EQ(a.classification[i].is_positive(), above);
    }
  }
}

TEST(StaticAssign, Deterministic) {
  const mg::UnitMatrix m = mg::testing::boat_column(mg::testing::kBoatIouAnchor);
  const mg::Assignment a = mg::static_assign(m, {});
  const mg::Assignment b = mg::static_assign(m, {});
  EXPECT_EQ(a.classification, b.classification);
  EXPECT_EQ(a.counts, b.counts);
}

TEST(AmplifiedIou, ClosedForms) {
  EXPECT_EQ(mg::amplified_iou(0.5, 0.0, 2.0), 0.5);
  EXPECT_NEAR(mg::amplified_iou(0.5, 1.0, 2.0), 0.7071067811865476, 1e-12);
  EXPECT_NEAR(mg::amplified_iou(0.49, 0.8, 2.0), 0.6518049405663864, 1e-12);
  EXPECT_NEAR(mg::amplified_iou(0.49, 0.8, 2.0), mg::testing::amplified_by_logs(0.49, 0.8, 2.0),
              1e-12);
  EXPECT_NEAR(mg::amplified_iou(0.45, 0.9, 2.0), 0.6445652419657315, 1e-12);
  EXPECT_EQ(mg::amplified_iou(0.0, 0.9, 2.0), 0.0);
  EXPECT_EQ(mg::amplified_iou(1.0, 0.9, 2.0), 1.0);
}

TEST(AmplifiedIou, RejectsBadArguments) {
  EXPECT_THROW(mg::amplified_iou(0.5, 0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(mg::amplified_iou(1.5, 0.5, 2.0), std::invalid_argument);
  EXPECT_THROW(mg::amplified_iou(0.5, -0.1, 2.0), std::invalid_argument);
}

TEST(AmplifiedIou, Properties) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    const double x = u(rng);
    const double p = u(rng);
    const double sigma = 1.0 + 1e-3 + 9.0 * u(rng);
    const double a = mg::amplified_iou(x, p, sigma);
    EXPECT_GE(a, x);
    EXPECT_LE(a, 1.0);
    EXPECT_NEAR(a, mg::testing::amplified_by_logs(x, p, sigma), 1e-12);
    if (x > 0.0 && x < 1.0 && p < 0.99) {
      EXPECT_GT(mg::amplified_iou(x, p + 0.01, sigma), a);
    }
  }
  EXPECT_LT(std::abs(mg::amplified_iou(0.5, 1.0, 1e6) - 0.5), 1e-5);
}

TEST(LocalizeToClassify, RankAndCut) {
  const mg::TaskLabels t =
      mg::localize_to_classify(column({0.9, 0.3, 0.8, 0.7, 0.1}), {mg::ObjectCounts{2, 1}});
  EXPECT_EQ(t.labels, (std::vector<Label>{Label::Positive(0), Label::Negative(), Label::Positive(0),
                                          Label::Ignored(), Label::Negative()}));
  EXPECT_EQ(t.selected[0], (std::vector<std::size_t>{0, 2}));
}

TEST(LocalizeToClassify, TiesGoToLowerIndex) {
  const mg::TaskLabels t = mg::localize_to_classify(column({0.8, 0.8, 0.1}), {mg::ObjectCounts{1, 1}});
  EXPECT_EQ(t.labels, (std::vector<Label>{Label::Positive(0), Label::Ignored(), Label::Negative()}));
}

TEST(LocalizeToClassify, IdenticalInputsReproduceStatic) {
  const mg::UnitMatrix m = mg::testing::boat_column(mg::testing::kBoatIouAnchor);
  const mg::Assignment s = mg::static_assign(m, {});
  const mg::TaskLabels t = mg::localize_to_classify(m, m, {});
  EXPECT_EQ(t.labels, s.classification);
}

TEST(LocalizeToClassify, BoatFixture) {
  const mg::TaskLabels t =
      mg::localize_to_classify(mg::testing::boat_column(mg::testing::kBoatIouAnchor),
                               mg::testing::boat_column(mg::testing::kBoatIouRegressed), {});
  EXPECT_EQ(positives_of(t.labels, 0), names({'H', 'A', 'K', 'B', 'D', 'E'}));
  EXPECT_EQ(with_kind(t.labels, Label::Kind::kIgnored), names({'G', 'J', 'I'}));
  EXPECT_EQ(t.selected[0].size(), 6u);
}

TEST(LocalizeToClassify, ClampsAndWarns) {
  const mg::TaskLabels t = mg::localize_to_classify(column({0.5, 0.4}), {mg::ObjectCounts{2, 3}});
  EXPECT_EQ(t.labels, (std::vector<Label>{Label::Positive(0), Label::Positive(0)}));
  EXPECT_FALSE(t.warnings.empty());
}

TEST(LocalizeToClassify, PositiveBeatsIgnoredAcrossObjects) {
  // Anchor 1 is object 0's Ignored pick and object 1's Positive pick.
  const mg::UnitMatrix reg = mg::UnitMatrix::FromColumns({{0.9, 0.6, 0.1}, {0.1, 0.5, 0.3}});
  const mg::TaskLabels t =
      mg::localize_to_classify(reg, {mg::ObjectCounts{1, 1}, mg::ObjectCounts{1, 0}});
  EXPECT_EQ(t.labels, (std::vector<Label>{Label::Positive(0), Label::Positive(1), Label::Negative()}));
}

TEST(LocalizeToClassify, ScalingAColumnKeepsSelection) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> values(30);
    for (double& v : values) v = u(rng);
    const mg::UnitMatrix reg(15, 2, values);
    double max0 = 0.0;
    for (std::size_t i = 0; i < 15; ++i) max0 = std::max(max0, reg(i, 0));
    mg::UnitMatrix scaled = reg;
    const double c = 0.5 / max0;
    for (std::size_t i = 0; i < 15; ++i) scaled.set(i, 0, reg(i, 0) * c);
    const std::vector<mg::ObjectCounts> counts = {{3, 2}, {2, 1}};
    EXPECT_EQ(mg::localize_to_classify(reg, counts).selected[0],
              mg::localize_to_classify(scaled, counts).selected[0]);
  }
}

TEST(ClassifyToLocalize, ZeroScoresRankByAnchorIou) {
  const mg::UnitMatrix iou = column({0.3, 0.6, 0.55, 0.2});
  const mg::TaskLabels t = mg::classify_to_localize(iou, mg::UnitMatrix(4, 1, 0.0), mg::MatchingConfig{});
  EXPECT_EQ(t.selected[0], (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(t.labels, mg::static_assign(iou, {}).localization);
}

TEST(ClassifyToLocalize, ScoreReordersSelection) {
  const mg::TaskLabels t = mg::classify_to_localize(column({0.5, 0.45, 0.4}), column({0.0, 0.9, 0.0}),
                                                    {mg::ObjectCounts{2, 0}}, 2.0);
  EXPECT_EQ(t.selected[0], (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(t.labels, (std::vector<Label>{Label::Positive(0), Label::Positive(0), Label::Negative()}));
}

TEST(ClassifyToLocalize, EqualScoresPickHighestIou) {
  const mg::TaskLabels t = mg::classify_to_localize(column({0.3, 0.7, 0.5}), column({0.6, 0.6, 0.6}),
                                                    {mg::ObjectCounts{1, 0}}, 2.0);
  EXPECT_EQ(t.selected[0], (std::vector<std::size_t>{1}));
}

TEST(ClassifyToLocalize, BoatFixture) {
  const mg::TaskLabels t =
      mg::classify_to_localize(mg::testing::boat_column(mg::testing::kBoatIouAnchor),
                               mg::testing::boat_column(mg::testing::kBoatScores), {});
  EXPECT_EQ(t.selected[0], (std::vector<std::size_t>{anchor('A'), anchor('B'), anchor('H'),
                                                      anchor('C'), anchor('D'), anchor('E')}));
  EXPECT_TRUE(with_kind(t.labels, Label::Kind::kIgnored).empty());
}

TEST(MutualGuidance, DegeneratesToStatic) {
  const mg::UnitMatrix m = mg::testing::boat_column(mg::testing::kBoatIouAnchor);
  const mg::Assignment s = mg::static_assign(m, {});
  const mg::Assignment a = mg::mutual_guidance_assign(m, m, mg::UnitMatrix(13, 1, 0.0), {});
  EXPECT_EQ(a.classification, s.classification);
  EXPECT_EQ(a.localization, s.localization);
  EXPECT_EQ(a.counts, s.counts);
}

TEST(MutualGuidance, BoatSplitsTheTasks) {
  const mg::Assignment a =
      mg::mutual_guidance_assign(mg::testing::boat_column(mg::testing::kBoatIouAnchor),
                                 mg::testing::boat_column(mg::testing::kBoatIouRegressed),
                                 mg::testing::boat_column(mg::testing::kBoatScores), {});
  EXPECT_EQ(a.counts[0], (mg::ObjectCounts{6, 3}));
  // F: a static positive demoted by both tasks.
  EXPECT_TRUE(a.classification[anchor('F')].is_negative());
  EXPECT_TRUE(a.localization[anchor('F')].is_negative());
  // H: statically ignored, promoted by both tasks.
  EXPECT_TRUE(a.classification[anchor('H')].is_positive());
  EXPECT_TRUE(a.localization[anchor('H')].is_positive());
  // C: negative for classification, positive for localization.
  EXPECT_TRUE(a.classification[anchor('C')].is_negative());
  EXPECT_TRUE(a.localization[anchor('C')].is_positive());
  // K: the converse.
  EXPECT_TRUE(a.classification[anchor('K')].is_positive());
  EXPECT_TRUE(a.localization[anchor('K')].is_negative());
  EXPECT_EQ(mg::count_positives(a.classification), 6u);
  EXPECT_EQ(mg::count_positives(a.localization), 6u);
}

TEST(MutualGuidance, CountConservationOnRandomScenes) {
  const mg::AnchorSet anchors = mg::generate_anchors(mg::AnchorGridSpec::Default());
  mg::TrajectoryConfig traj;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    mg::SceneSpec spec;
    spec.seed = seed;
    const mg::Scene scene = mg::synth_scene(spec);
    const mg::IoUMatrix iou = mg::iou_matrix(anchors.boxes, scene.boxes);
    const mg::TrajectorySnapshot snap = mg::synth_predictions(scene, anchors.boxes, traj, 0.6, seed);
    const mg::IoUMatrix reg = mg::regressed_iou(snap, scene);
    const mg::Assignment s = mg::static_assign(iou, {});
    const mg::TaskLabels l2c = mg::localize_to_classify(iou, reg, {});
    const mg::TaskLabels c2l = mg::classify_to_localize(iou, snap.scores, {});
    for (std::size_t j = 0; j < scene.boxes.size(); ++j) {
      EXPECT_EQ(l2c.selected[j].size(), s.counts[j].positives);
      EXPECT_EQ(c2l.selected[j].size(), s.counts[j].positives);
    }
    const mg::Assignment m = mg::mutual_guidance_assign(iou, reg, snap.scores, {});
    for (std::size_t n : mg::positives_per_object(m.classification, scene.boxes.size())) EXPECT_GE(n, 1u);
    for (std::size_t n : mg::positives_per_object(m.localization, scene.boxes.size())) EXPECT_GE(n, 1u);
  }
}

TEST(MutualGuidance, RejectsMismatchedShapes) {
  EXPECT_THROW(mg::mutual_guidance_assign(column({0.5, 0.4}), column({0.5}), column({0.1, 0.1}), {}),
               std::invalid_argument);
}

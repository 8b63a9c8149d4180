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

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "mutualguide/geometry.hpp"
#include "oracles.hpp"

namespace mg = mutualguide;

namespace {

mg::Box random_integer_box(std::mt19937& rng, int canvas) {
  std::uniform_int_distribution<int> coord(0, canvas - 1);
  int x0 = coord(rng);
  int x1 = coord(rng);
  int y0 = coord(rng);
  int y1 = coord(rng);
  if (x0 > x1) std::swap(x0, x1);
  if (y0 > y1) std::swap(y0, y1);
  return mg::Box(x0, y0, x1 + 1, y1 + 1);
}

}  // namespace

TEST(Area, Examples) {
  EXPECT_EQ(mg::area(mg::Box(0, 0, 10, 10)), 100.0);
  EXPECT_EQ(mg::area(mg::Box(0, 0, 1, 1)), 1.0);
  EXPECT_EQ(mg::area(mg::Box(2, 3, 7, 11)), 40.0);
}

TEST(Box, RejectsDegenerateAndNonFinite) {
  EXPECT_THROW(mg::Box(0, 0, 0, 10), std::invalid_argument);
  EXPECT_THROW(mg::Box(0, 0, 10, -1), std::invalid_argument);
  EXPECT_THROW(mg::Box(0, 0, std::numeric_limits<double>::infinity(), 1), std::invalid_argument);
  EXPECT_THROW(mg::Box(std::nan(""), 0, 1, 1), std::invalid_argument);
  EXPECT_THROW(mg::Box::FromXYWH(0, 0, 0, 5), std::invalid_argument);
}

TEST(Box, FromXYWH) {
  EXPECT_EQ(mg::Box::FromXYWH(61, 101, 66, 42), mg::Box(61, 101, 127, 143));
}

TEST(Iou, Examples) {
  const mg::Box a(0, 0, 10, 10);
  EXPECT_EQ(mg::iou(a, a), 1.0);
  EXPECT_EQ(mg::iou(a, mg::Box(20, 20, 30, 30)), 0.0);
  EXPECT_NEAR(mg::iou(a, mg::Box(5, 0, 15, 10)), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(mg::testing::raster_iou(a, mg::Box(5, 0, 15, 10)), 1.0 / 3.0, 1e-15);
}

TEST(Iou, TouchingBoxesDoNotOverlap) {
  EXPECT_EQ(mg::iou(mg::Box(0, 0, 10, 10), mg::Box(10, 0, 20, 10)), 0.0);
  EXPECT_EQ(mg::iou(mg::Box(0, 0, 10, 10), mg::Box(0, 10, 10, 20)), 0.0);
}

TEST(Iou, MatchesRasterizationOracle) {
  std::mt19937 rng(11);
  for (int k = 0; k < 500; ++k) {
    const mg::Box a = random_integer_box(rng, 64);
    const mg::Box b = random_integer_box(rng, 64);
    const double v = mg::iou(a, b);
    EXPECT_NEAR(v, mg::testing::raster_iou(a, b), 1e-9);
    EXPECT_EQ(v, mg::iou(b, a));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(IouMatrix, Examples) {
  const std::vector<mg::Box> one = {mg::Box(0, 0, 4, 4)};
  EXPECT_EQ(mg::iou_matrix(one, one), mg::UnitMatrix(1, 1, 1.0));

  const std::vector<mg::Box> anchors = {mg::Box(0, 0, 2, 2), mg::Box(10, 10, 12, 12)};
  const std::vector<mg::Box> object = {mg::Box(4, 4, 6, 6)};
  EXPECT_EQ(mg::iou_matrix(anchors, object), mg::UnitMatrix(2, 1, 0.0));
}

TEST(IouMatrix, MatchesEntrywiseIou) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<mg::Box> anchors;
    std::vector<mg::Box> objects;
    for (int i = 0; i < 3; ++i) anchors.push_back(random_integer_box(rng, 32));
    for (int j = 0; j < 2; ++j) objects.push_back(random_integer_box(rng, 32));
    const mg::IoUMatrix m = mg::iou_matrix(anchors, objects);
    ASSERT_EQ(m.rows(), 3u);
    ASSERT_EQ(m.cols(), 2u);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(m(i, j), mg::iou(anchors[i], objects[j]));
    }
  }
}

TEST(IouMatrix, RejectsEmptyInputs) {
  const std::vector<mg::Box> boxes = {mg::Box(0, 0, 1, 1)};
  EXPECT_THROW(mg::iou_matrix({}, boxes), std::invalid_argument);
  EXPECT_THROW(mg::iou_matrix(boxes, {}), std::invalid_argument);
}

TEST(UnitMatrix, RejectsOutOfRangeEntries) {
  EXPECT_THROW(mg::UnitMatrix(1, 1, 1.5), std::invalid_argument);
  EXPECT_THROW(mg::UnitMatrix(1, 2, std::vector<double>{0.1}), std::invalid_argument);
  mg::UnitMatrix m(2, 2);
  EXPECT_THROW(m.set(0, 0, -0.1), std::invalid_argument);
  EXPECT_THROW(static_cast<void>(m.at(2, 0)), std::out_of_range);
}

TEST(UnitMatrix, FromColumnsIsColumnMajor) {
  const mg::UnitMatrix m = mg::UnitMatrix::FromColumns({{0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}});
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 2u);
  EXPECT_EQ(m(2, 0), 0.3);
  EXPECT_EQ(m(0, 1), 0.4);
  EXPECT_EQ(m.column(1), (std::vector<double>{0.4, 0.5, 0.6}));
}

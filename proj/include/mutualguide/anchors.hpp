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
#include <limits>
#include <vector>

#include "mutualguide/geometry.hpp"

namespace mutualguide {

struct LevelSpec {
  int stride = 8;
  std::vector<double> scales;         // anchor side lengths in pixels
  std::vector<double> aspect_ratios;  // width / height
};

struct AnchorGridSpec {
  int image_width = 320;
  int image_height = 320;
  std::vector<LevelSpec> levels;

  // Three levels on a 320x320 canvas: strides 8/16/32, scales {32},
  // {64, 128}, {256}, ratios {1, 2, 1/2}.
  static AnchorGridSpec Default();

  // Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

// Half-open index range [begin, end) into a flat anchor or point list.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool operator==(const IndexRange&) const = default;
};

struct AnchorSet {
  std::vector<Box> boxes;
  std::vector<IndexRange> level_offsets;

  std::size_t size() const { return boxes.size(); }
};

// Object sizes (max side, pixels) a point level is responsible for:
// lower <= size < upper.
struct ScaleRange {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();

  bool matches(double size) const { return size >= lower && size < upper; }
  bool operator==(const ScaleRange&) const = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  std::size_t level = 0;
  int stride = 1;
  ScaleRange scale_range;

  bool operator==(const Point&) const = default;
};

struct PointSet {
  std::vector<Point> points;
  std::vector<IndexRange> level_offsets;

  std::size_t size() const { return points.size(); }
};

// Flat anchor list ordered by level, then row (top to bottom), column
// (left to right), scale, aspect ratio. Scale s and ratio r give a box of
// width s*sqrt(r) and height s/sqrt(r) centred on the cell; anchors are not
// clipped to the image.
AnchorSet generate_anchors(const AnchorGridSpec& spec);

// One point per cell centre per level, same ordering as generate_anchors.
// Level l handles objects whose larger side lies in
// [min scale of l, min scale of l+1), with 0 and infinity at the ends, so
// per-level minimum scales must strictly increase.
PointSet generate_points(const AnchorGridSpec& spec);

std::vector<ScaleRange> level_scale_ranges(const AnchorGridSpec& spec);

}  // namespace mutualguide

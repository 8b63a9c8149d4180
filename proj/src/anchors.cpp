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
#include "mutualguide/anchors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mutualguide {

AnchorGridSpec AnchorGridSpec::Default() {
  AnchorGridSpec spec;
  spec.image_width = 320;
  spec.image_height = 320;
  const std::vector<double> ratios{1.0, 2.0, 0.5};
  spec.levels = {
      LevelSpec{8, {32.0}, ratios},
      LevelSpec{16, {64.0, 128.0}, ratios},
      LevelSpec{32, {256.0}, ratios},
  };
  return spec;
}

void AnchorGridSpec::validate() const {
  if (image_width <= 0 || image_height <= 0) {
    throw std::invalid_argument("anchor grid: image dimensions must be positive");
  }
  if (levels.empty()) throw std::invalid_argument("anchor grid: at least one level is required");
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const LevelSpec& level = levels[l];
    const std::string where = "anchor grid level " + std::to_string(l) + ": ";
    if (level.stride < 1) throw std::invalid_argument(where + "stride must be >= 1");
    if (image_width % level.stride != 0 || image_height % level.stride != 0) {
      throw std::invalid_argument(where + "image dimensions must be divisible by the stride");
    }
    if (level.scales.empty()) throw std::invalid_argument(where + "needs at least one scale");
    if (level.aspect_ratios.empty()) {
      throw std::invalid_argument(where + "needs at least one aspect ratio");
    }
    for (double s : level.scales) {
      if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument(where + "scales must be > 0");
    }
    for (double r : level.aspect_ratios) {
      if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument(where + "aspect ratios must be > 0");
      }
    }
  }
}

AnchorSet generate_anchors(const AnchorGridSpec& spec) {
  spec.validate();
  AnchorSet set;
  std::size_t total = 0;
  for (const LevelSpec& level : spec.levels) {
    total += static_cast<std::size_t>(spec.image_width / level.stride) *
             static_cast<std::size_t>(spec.image_height / level.stride) * level.scales.size() *
             level.aspect_ratios.size();
  }
  set.boxes.reserve(total);

  for (const LevelSpec& level : spec.levels) {
    const std::size_t begin = set.boxes.size();
    const int cols = spec.image_width / level.stride;
    const int rows = spec.image_height / level.stride;
    for (int row = 0; row < rows; ++row) {
      const double cy = level.stride * (row + 0.5);
      for (int col = 0; col < cols; ++col) {
        const double cx = level.stride * (col + 0.5);
        for (double scale : level.scales) {
          for (double ratio : level.aspect_ratios) {
            const double half_w = 0.5 * scale * std::sqrt(ratio);
            const double half_h = 0.5 * scale / std::sqrt(ratio);
            set.boxes.emplace_back(cx - half_w, cy - half_h, cx + half_w, cy + half_h);
          }
        }
      }
    }
    set.level_offsets.push_back({begin, set.boxes.size()});
  }
  return set;
}

std::vector<ScaleRange> level_scale_ranges(const AnchorGridSpec& spec) {
  spec.validate();
  std::vector<double> smallest;
  for (const LevelSpec& level : spec.levels) {
    smallest.push_back(*std::min_element(level.scales.begin(), level.scales.end()));
  }
  for (std::size_t l = 1; l < smallest.size(); ++l) {
    if (!(smallest[l] > smallest[l - 1])) {
      throw std::invalid_argument(
          "point grid: per-level minimum scales must strictly increase to define scale ranges");
    }
  }
  std::vector<ScaleRange> ranges(spec.levels.size());
  for (std::size_t l = 0; l < ranges.size(); ++l) {
    ranges[l].lower = l == 0 ? 0.0 : smallest[l];
    ranges[l].upper =
        l + 1 == ranges.size() ? std::numeric_limits<double>::infinity() : smallest[l + 1];
  }
  return ranges;
}

PointSet generate_points(const AnchorGridSpec& spec) {
  const std::vector<ScaleRange> ranges = level_scale_ranges(spec);
  PointSet set;
  for (std::size_t l = 0; l < spec.levels.size(); ++l) {
    const int stride = spec.levels[l].stride;
    const std::size_t begin = set.points.size();
    const int cols = spec.image_width / stride;
    const int rows = spec.image_height / stride;
    for (int row = 0; row < rows; ++row) {
      for (int col = 0; col < cols; ++col) {
        set.points.push_back(
            Point{stride * (col + 0.5), stride * (row + 0.5), l, stride, ranges[l]});
      }
    }
    set.level_offsets.push_back({begin, set.points.size()});
  }
  return set;
}

}  // namespace mutualguide

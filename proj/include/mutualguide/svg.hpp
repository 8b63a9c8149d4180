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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mutualguide/geometry.hpp"

namespace mutualguide {

// Colours for the three assigners in label-difference plots.
inline constexpr const char* kStaticColor = "#ff3b30";            // red
inline constexpr const char* kLocalizeToClassifyColor = "#ffd60a";  // yellow
inline constexpr const char* kClassifyToLocalizeColor = "#34c759";  // green

struct SvgLayer {
  std::string label;
  std::string color;
  std::vector<Box> boxes;                          // drawn as outlines
  std::vector<std::pair<double, double>> points;   // drawn as dots
};

// 1 px per image pixel on a dark background; ground truth as dashed white
// boxes, then the layers in order, then a legend. Output depends only on the
// arguments.
std::string render_svg(int width, int height, std::span<const Box> ground_truth,
                       const std::vector<SvgLayer>& layers);

}  // namespace mutualguide

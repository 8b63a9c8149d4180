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

// Thirteen anchors A..M around a single boat. Six anchors reach IoU_anchor
// 0.5 and three fall in [0.4, 0.5), so the static matcher yields N_p = 6 and
// N_i = 3. Predictions are chosen so that
//   - F (IoU_anchor 0.60, poor predictions) ends Negative for both tasks,
//   - H (IoU_anchor 0.48, excellent predictions) is promoted for both tasks,
//   - C (well classified, badly localized) is Negative for classification
//     but Positive for localization,
//   - K (well localized, badly classified) is the converse split.

#include <array>
#include <cstddef>

#include "mutualguide/geometry.hpp"

namespace mutualguide::testing {

inline constexpr std::array<char, 13> kBoatNames = {'A', 'B', 'C', 'D', 'E', 'F', 'G',
                                                    'H', 'I', 'J', 'K', 'L', 'M'};
inline constexpr std::array<double, 13> kBoatIouAnchor = {0.62, 0.58, 0.45, 0.55, 0.52, 0.60, 0.51,
                                                          0.48, 0.42, 0.35, 0.30, 0.20, 0.10};
inline constexpr std::array<double, 13> kBoatIouRegressed = {0.80, 0.75, 0.30, 0.72, 0.70, 0.20, 0.68,
                                                             0.85, 0.40, 0.50, 0.78, 0.15, 0.05};
inline constexpr std::array<double, 13> kBoatScores = {0.70, 0.65, 0.98, 0.60, 0.55, 0.05, 0.50,
                                                       0.90, 0.30, 0.20, 0.02, 0.10, 0.05};

inline constexpr std::size_t anchor(char name) { return static_cast<std::size_t>(name - 'A'); }

inline UnitMatrix boat_column(const std::array<double, 13>& values) {
  return UnitMatrix::FromColumns({std::vector<double>(values.begin(), values.end())});
}

}  // namespace mutualguide::testing

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

// Ranking and cross-object merge shared by the anchor and point assigners.

#include <cstddef>
#include <string>
#include <vector>

#include "mutualguide/assignment.hpp"
#include "mutualguide/geometry.hpp"

namespace mutualguide::detail {

// The k best candidates of a score column: higher score first, ties to the
// lower index. An empty candidate list means every row of the column.
std::vector<std::size_t> top_k(const std::vector<double>& column,
                               std::vector<std::size_t> candidates, std::size_t k);

struct ObjectPicks {
  std::vector<std::size_t> positives;
  std::vector<std::size_t> ignored;
  // Rows the object may claim when it has to be repaired; empty means all.
  std::vector<std::size_t> eligible;
};

// Resolves per-object picks into one label per row. Positive beats Ignored
// beats Negative; a row claimed Positive by several objects goes to the
// highest score (ties: lowest object index). An object left without any
// Positive afterwards claims its best eligible row that is either not
// Positive or owned by an object holding at least two Positives.
std::vector<Label> merge_picks(const UnitMatrix& scores, const std::vector<ObjectPicks>& picks,
                               std::vector<std::string>& warnings);

}  // namespace mutualguide::detail

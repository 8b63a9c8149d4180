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
#include "label_merge.hpp"

#include <algorithm>
#include <numeric>

namespace mutualguide::detail {

std::vector<std::size_t> top_k(const std::vector<double>& column,
                               std::vector<std::size_t> candidates, std::size_t k) {
  if (candidates.empty()) {
    candidates.resize(column.size());
    std::iota(candidates.begin(), candidates.end(), std::size_t{0});
  }
  k = std::min(k, candidates.size());
  const auto better = [&column](std::size_t a, std::size_t b) {
    if (column[a] != column[b]) return column[a] > column[b];
    return a < b;
  };
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                    candidates.end(), better);
  candidates.resize(k);
  return candidates;
}

std::vector<Label> merge_picks(const UnitMatrix& scores, const std::vector<ObjectPicks>& picks,
                               std::vector<std::string>& warnings) {
  const std::size_t rows = scores.rows();
  std::vector<Label> labels(rows, Label::Negative());

  for (std::size_t j = 0; j < picks.size(); ++j) {
    for (std::size_t row : picks[j].ignored) {
      if (!labels[row].is_positive()) labels[row] = Label::Ignored();
    }
  }
  for (std::size_t j = 0; j < picks.size(); ++j) {
    for (std::size_t row : picks[j].positives) {
      const Label current = labels[row];
      // objects are visited in index order, so equal scores keep the earlier one
      if (!current.is_positive() || scores(row, j) > scores(row, current.object())) {
        labels[row] = Label::Positive(j);
      }
    }
  }

  std::vector<std::size_t> owned = positives_per_object(labels, picks.size());
  for (std::size_t j = 0; j < picks.size(); ++j) {
    if (owned[j] > 0 || picks[j].positives.empty()) continue;
    const std::vector<std::size_t> ranking =
        top_k(scores.column(j), picks[j].eligible,
              picks[j].eligible.empty() ? rows : picks[j].eligible.size());
    bool repaired = false;
    for (std::size_t row : ranking) {
      const Label current = labels[row];
      if (current.is_positive()) {
        if (owned[current.object()] < 2) continue;
        --owned[current.object()];
      }
      labels[row] = Label::Positive(j);
      ++owned[j];
      repaired = true;
      break;
    }
    if (!repaired) {
      warnings.push_back("object " + std::to_string(j) +
                         " lost every positive to other objects and could not be repaired");
    }
  }
  return labels;
}

}  // namespace mutualguide::detail

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
#include "mutualguide/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "label_merge.hpp"

namespace mutualguide {

std::size_t Label::object() const {
  if (kind_ != Kind::kPositive) throw std::logic_error("only Positive labels carry an object index");
  return object_;
}

std::int64_t Label::encode() const {
  switch (kind_) {
    case Kind::kPositive:
      return static_cast<std::int64_t>(object_);
    case Kind::kIgnored:
      return -2;
    case Kind::kNegative:
      break;
  }
  return -1;
}

Label Label::Decode(std::int64_t code) {
  if (code >= 0) return Positive(static_cast<std::size_t>(code));
  if (code == -1) return Negative();
  if (code == -2) return Ignored();
  throw std::invalid_argument("unknown label code " + std::to_string(code));
}

void MatchingConfig::validate() const {
  if (!(pos_threshold >= 0.0 && pos_threshold <= 1.0) ||
      !(neg_threshold >= 0.0 && neg_threshold <= 1.0)) {
    throw std::invalid_argument("matching thresholds must lie in [0, 1]");
  }
  if (pos_threshold < neg_threshold) {
    throw std::invalid_argument("positive threshold must not be below the negative threshold");
  }
  if (!(sigma > 1.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be a finite value greater than 1");
  }
}

std::vector<std::size_t> positives_per_object(const std::vector<Label>& labels,
                                              std::size_t object_count) {
  std::vector<std::size_t> counts(object_count, 0);
  for (const Label& label : labels) {
    if (label.is_positive() && label.object() < object_count) ++counts[label.object()];
  }
  return counts;
}

std::size_t count_positives(const std::vector<Label>& labels) {
  return static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(), [](const Label& l) { return l.is_positive(); }));
}

Assignment static_assign(const IoUMatrix& iou_anchor, const MatchingConfig& cfg) {
  cfg.validate();
  if (iou_anchor.empty()) throw std::invalid_argument("static_assign: empty IoU matrix");
  const std::size_t rows = iou_anchor.rows();
  const std::size_t objects = iou_anchor.cols();

  std::vector<detail::ObjectPicks> picks(objects);
  for (std::size_t j = 0; j < objects; ++j) {
    std::size_t best_row = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      const double v = iou_anchor(i, j);
      if (v >= cfg.pos_threshold) picks[j].positives.push_back(i);
      if (v > iou_anchor(best_row, j)) best_row = i;
    }
    if (picks[j].positives.empty()) picks[j].positives.push_back(best_row);
  }

  Assignment out;
  out.classification = detail::merge_picks(iou_anchor, picks, out.warnings);
  out.counts.resize(objects);
  for (std::size_t j = 0; j < objects; ++j) out.counts[j].positives = picks[j].positives.size();

  for (std::size_t i = 0; i < rows; ++i) {
    if (out.classification[i].is_positive()) continue;
    const auto row = iou_anchor.row(i);
    const auto best = std::max_element(row.begin(), row.end());  // first maximum
    if (*best >= cfg.neg_threshold) {
      out.classification[i] = Label::Ignored();
      ++out.counts[static_cast<std::size_t>(best - row.begin())].ignored;
    }
  }

  // Ignored anchors carry no regression target.
  out.localization = out.classification;
  for (Label& label : out.localization) {
    if (label.is_ignored()) label = Label::Negative();
  }
  return out;
}

double amplified_iou(double iou, double p, double sigma) {
  if (!(sigma > 1.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("amplified_iou: sigma must be greater than 1");
  }
  if (!(iou >= 0.0 && iou <= 1.0)) throw std::invalid_argument("amplified_iou: iou outside [0, 1]");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("amplified_iou: score outside [0, 1]");
  if (p == 0.0) return iou;
  return std::max(iou, std::pow(iou, (sigma - p) / sigma));
}

UnitMatrix amplified_iou_matrix(const IoUMatrix& iou_anchor, const ScoreMatrix& scores,
                                double sigma) {
  if (iou_anchor.rows() != scores.rows() || iou_anchor.cols() != scores.cols()) {
    throw std::invalid_argument("classification scores must match the IoU matrix dimensions");
  }
  std::vector<double> values(iou_anchor.values().size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = amplified_iou(iou_anchor.values()[k], scores.values()[k], sigma);
  }
  return UnitMatrix(iou_anchor.rows(), iou_anchor.cols(), std::move(values));
}

namespace {

void check_counts(const UnitMatrix& m, const std::vector<ObjectCounts>& counts) {
  if (m.empty()) throw std::invalid_argument("empty IoU matrix");
  if (counts.size() != m.cols()) {
    throw std::invalid_argument("per-object counts do not match the number of objects");
  }
}

void clamp_warning(std::size_t object, std::size_t wanted, std::size_t available,
                   std::vector<std::string>& warnings) {
  warnings.push_back("object " + std::to_string(object) + ": requested " + std::to_string(wanted) +
                     " ranked anchors but only " + std::to_string(available) +
                     " exist; took all of them");
}

// Ranks every row by `scores` per object and cuts at N_p (and N_p + N_i when
// `with_ignored` is set).
TaskLabels rank_and_cut(const UnitMatrix& scores, const std::vector<ObjectCounts>& counts,
                        bool with_ignored) {
  check_counts(scores, counts);
  TaskLabels out;
  std::vector<detail::ObjectPicks> picks(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) {
    const std::size_t n_pos = counts[j].positives;
    const std::size_t n_ign = with_ignored ? counts[j].ignored : 0;
    if (n_pos + n_ign > scores.rows()) clamp_warning(j, n_pos + n_ign, scores.rows(), out.warnings);
    std::vector<std::size_t> ranked = detail::top_k(scores.column(j), {}, n_pos + n_ign);
    const std::size_t cut = std::min(n_pos, ranked.size());
    picks[j].positives.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(cut));
    picks[j].ignored.assign(ranked.begin() + static_cast<std::ptrdiff_t>(cut), ranked.end());
  }
  out.labels = detail::merge_picks(scores, picks, out.warnings);
  out.selected.reserve(picks.size());
  for (auto& p : picks) out.selected.push_back(std::move(p.positives));
  return out;
}

}  // namespace

TaskLabels localize_to_classify(const IoUMatrix& iou_regressed,
                                const std::vector<ObjectCounts>& counts) {
  return rank_and_cut(iou_regressed, counts, /*with_ignored=*/true);
}

TaskLabels localize_to_classify(const IoUMatrix& iou_anchor, const IoUMatrix& iou_regressed,
                                const MatchingConfig& cfg) {
  if (iou_anchor.rows() != iou_regressed.rows() || iou_anchor.cols() != iou_regressed.cols()) {
    throw std::invalid_argument("IoU_anchor and IoU_regressed dimensions differ");
  }
  return localize_to_classify(iou_regressed, static_assign(iou_anchor, cfg).counts);
}

TaskLabels classify_to_localize(const IoUMatrix& iou_anchor, const ScoreMatrix& scores,
                                const std::vector<ObjectCounts>& counts, double sigma) {
  return rank_and_cut(amplified_iou_matrix(iou_anchor, scores, sigma), counts,
                      /*with_ignored=*/false);
}

TaskLabels classify_to_localize(const IoUMatrix& iou_anchor, const ScoreMatrix& scores,
                                const MatchingConfig& cfg) {
  return classify_to_localize(iou_anchor, scores, static_assign(iou_anchor, cfg).counts,
                              cfg.sigma);
}

Assignment mutual_guidance_assign(const IoUMatrix& iou_anchor, const IoUMatrix& iou_regressed,
                                  const ScoreMatrix& scores, const MatchingConfig& cfg) {
  if (iou_anchor.rows() != iou_regressed.rows() || iou_anchor.cols() != iou_regressed.cols()) {
    throw std::invalid_argument("IoU_anchor and IoU_regressed dimensions differ");
  }
  Assignment base = static_assign(iou_anchor, cfg);
  TaskLabels cls = localize_to_classify(iou_regressed, base.counts);
  TaskLabels loc = classify_to_localize(iou_anchor, scores, base.counts, cfg.sigma);

  Assignment out;
  out.classification = std::move(cls.labels);
  out.localization = std::move(loc.labels);
  out.counts = std::move(base.counts);
  out.warnings = std::move(base.warnings);
  out.warnings.insert(out.warnings.end(), cls.warnings.begin(), cls.warnings.end());
  out.warnings.insert(out.warnings.end(), loc.warnings.begin(), loc.warnings.end());
  return out;
}

}  // namespace mutualguide

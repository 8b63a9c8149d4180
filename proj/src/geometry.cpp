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
#include "mutualguide/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mutualguide {

Box::Box(double x_min, double y_min, double x_max, double y_max)
    : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
  if (!std::isfinite(x_min) || !std::isfinite(y_min) || !std::isfinite(x_max) ||
      !std::isfinite(y_max)) {
    throw std::invalid_argument("box coordinates must be finite");
  }
  if (!(x_max > x_min) || !(y_max > y_min)) {
    std::ostringstream msg;
    msg << "degenerate box [" << x_min << ", " << y_min << ", " << x_max << ", " << y_max
        << "]: extent must be strictly positive";
    throw std::invalid_argument(msg.str());
  }
}

Box Box::FromXYWH(double x, double y, double width, double height) {
  return Box(x, y, x + width, y + height);
}

double area(const Box& b) { return b.width() * b.height(); }

double intersection_area(const Box& a, const Box& b) {
  const double w = std::min(a.x_max(), b.x_max()) - std::max(a.x_min(), b.x_min());
  const double h = std::min(a.y_max(), b.y_max()) - std::max(a.y_min(), b.y_min());
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

double iou(const Box& a, const Box& b) {
  const double inter = intersection_area(a, b);
  if (inter == 0.0) return 0.0;
  // union > 0 because both areas are strictly positive
  const double result = inter / (area(a) + area(b) - inter);
  return std::min(result, 1.0);
}

UnitMatrix::UnitMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {
  if (!(fill >= 0.0 && fill <= 1.0)) throw std::invalid_argument("matrix fill must lie in [0, 1]");
}

UnitMatrix::UnitMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    throw std::invalid_argument("matrix value count does not match its dimensions");
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("matrix entries must lie in [0, 1]");
  }
}

UnitMatrix UnitMatrix::FromColumns(const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) return {};
  const std::size_t rows = columns.front().size();
  UnitMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("ragged matrix columns");
    for (std::size_t r = 0; r < rows; ++r) m.set(r, c, columns[c][r]);
  }
  return m;
}

double UnitMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) throw std::out_of_range("matrix index out of range");
  return (*this)(row, col);
}

void UnitMatrix::set(std::size_t row, std::size_t col, double value) {
  if (row >= rows_ || col >= cols_) throw std::out_of_range("matrix index out of range");
  if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("matrix entries must lie in [0, 1]");
  values_[row * cols_ + col] = value;
}

std::vector<double> UnitMatrix::column(std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("matrix column out of range");
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IoUMatrix iou_matrix(std::span<const Box> anchors, std::span<const Box> objects) {
  if (anchors.empty() || objects.empty()) {
    throw std::invalid_argument("degenerate scene: iou_matrix needs at least one anchor and one object");
  }
  std::vector<double> values(anchors.size() * objects.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = 0; j < objects.size(); ++j) {
      values[i * objects.size() + j] = iou(anchors[i], objects[j]);
    }
  }
  return IoUMatrix(anchors.size(), objects.size(), std::move(values));
}

}  // namespace mutualguide

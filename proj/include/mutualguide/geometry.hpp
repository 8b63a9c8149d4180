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
#include <span>
#include <vector>

namespace mutualguide {

// Axis-aligned box in pixel coordinates, (x_min, y_min, x_max, y_max).
// Construction rejects non-finite coordinates and zero or negative extent.
class Box {
 public:
  Box(double x_min, double y_min, double x_max, double y_max);

  // COCO-style [x, y, width, height].
  static Box FromXYWH(double x, double y, double width, double height);

  double x_min() const { return x_min_; }
  double y_min() const { return y_min_; }
  double x_max() const { return x_max_; }
  double y_max() const { return y_max_; }

  double width() const { return x_max_ - x_min_; }
  double height() const { return y_max_ - y_min_; }
  double center_x() const { return 0.5 * (x_min_ + x_max_); }
  double center_y() const { return 0.5 * (y_min_ + y_max_); }

  // Strictly inside: the point does not touch any side.
  bool contains_strictly(double x, double y) const {
    return x > x_min_ && x < x_max_ && y > y_min_ && y < y_max_;
  }

  bool operator==(const Box&) const = default;

 private:
  double x_min_;
  double y_min_;
  double x_max_;
  double y_max_;
};

double area(const Box& b);

double intersection_area(const Box& a, const Box& b);

// Intersection over union. Symmetric, in [0, 1], 1 for identical boxes.
double iou(const Box& a, const Box& b);

// Dense row-major matrix whose entries all lie in [0, 1]. Rows index
// anchors (or points), columns index ground-truth objects.
class UnitMatrix {
 public:
  UnitMatrix() = default;
  UnitMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  UnitMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  // Column-major convenience for fixtures: one vector per object.
  static UnitMatrix FromColumns(const std::vector<std::vector<double>>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t row, std::size_t col) const { return values_[row * cols_ + col]; }
  double at(std::size_t row, std::size_t col) const;
  void set(std::size_t row, std::size_t col, double value);

  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::vector<double> column(std::size_t c) const;
  const std::vector<double>& values() const { return values_; }

  bool operator==(const UnitMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

using IoUMatrix = UnitMatrix;
using ScoreMatrix = UnitMatrix;

// Entry (i, j) is iou(anchors[i], objects[j]). Throws std::invalid_argument
// when either list is empty.
IoUMatrix iou_matrix(std::span<const Box> anchors, std::span<const Box> objects);

}  // namespace mutualguide

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
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mutualguide/anchors.hpp"
#include "mutualguide/assignment.hpp"
#include "mutualguide/evaluation.hpp"
#include "mutualguide/fcos_assignment.hpp"
#include "mutualguide/geometry.hpp"
#include "mutualguide/simulator.hpp"

namespace py = pybind11;
namespace mg = mutualguide;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using IntArray = py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;

std::vector<mg::Box> boxes_from(const DoubleArray& a) {
  if (a.ndim() != 2 || a.shape(1) != 4) throw std::invalid_argument("boxes must have shape (n, 4)");
  const auto r = a.unchecked<2>();
  std::vector<mg::Box> out;
  out.reserve(static_cast<std::size_t>(r.shape(0)));
  for (py::ssize_t i = 0; i < r.shape(0); ++i) out.emplace_back(r(i, 0), r(i, 1), r(i, 2), r(i, 3));
  return out;
}

py::array_t<double> boxes_to(const std::vector<mg::Box>& boxes) {
  py::array_t<double> out({static_cast<py::ssize_t>(boxes.size()), py::ssize_t{4}});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto k = static_cast<py::ssize_t>(i);
    w(k, 0) = boxes[i].x_min();
    w(k, 1) = boxes[i].y_min();
    w(k, 2) = boxes[i].x_max();
    w(k, 3) = boxes[i].y_max();
  }
  return out;
}

mg::UnitMatrix matrix_from(const DoubleArray& a) {
  if (a.ndim() != 2) throw std::invalid_argument("matrix must be two-dimensional");
  const auto* data = a.data();
  return mg::UnitMatrix(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)),
                        std::vector<double>(data, data + a.size()));
}

py::array_t<double> matrix_to(const mg::UnitMatrix& m) {
  py::array_t<double> out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

py::array_t<std::int64_t> labels_to(const std::vector<mg::Label>& labels) {
  py::array_t<std::int64_t> out(static_cast<py::ssize_t>(labels.size()));
  auto* data = out.mutable_data();
  for (std::size_t i = 0; i < labels.size(); ++i) data[i] = labels[i].encode();
  return out;
}

py::dict assignment_to(const mg::Assignment& a) {
  std::vector<std::size_t> n_p;
  std::vector<std::size_t> n_i;
  for (const mg::ObjectCounts& c : a.counts) {
    n_p.push_back(c.positives);
    n_i.push_back(c.ignored);
  }
  py::dict d;
  d["classification"] = labels_to(a.classification);
  d["localization"] = labels_to(a.localization);
  d["n_p"] = n_p;
  d["n_i"] = n_i;
  d["warnings"] = a.warnings;
  return d;
}

py::dict task_labels_to(const mg::TaskLabels& t) {
  py::dict d;
  d["labels"] = labels_to(t.labels);
  d["selected"] = t.selected;
  d["warnings"] = t.warnings;
  return d;
}

py::dict point_assignment_to(const mg::PointAssignment& a) {
  py::dict d;
  d["classification"] = labels_to(a.classification);
  d["localization"] = labels_to(a.localization);
  d["n_p"] = a.counts;
  d["warnings"] = a.warnings;
  return d;
}

mg::MatchingConfig matching(double pos, double neg, double sigma) {
  mg::MatchingConfig cfg{pos, neg, sigma};
  cfg.validate();
  return cfg;
}

std::vector<mg::Detection> detections_from(const DoubleArray& boxes, const DoubleArray& scores,
                                           const IntArray& class_ids, const std::optional<IntArray>& image_ids) {
  const std::vector<mg::Box> b = boxes_from(boxes);
  if (static_cast<std::size_t>(scores.size()) != b.size() ||
      static_cast<std::size_t>(class_ids.size()) != b.size() ||
      (image_ids && static_cast<std::size_t>(image_ids->size()) != b.size())) {
    throw std::invalid_argument("detection arrays must have matching lengths");
  }
  std::vector<mg::Detection> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    out.push_back({b[i], static_cast<int>(class_ids.data()[i]), scores.data()[i],
                   image_ids ? image_ids->data()[i] : 0});
  }
  return out;
}

std::vector<mg::GroundTruth> ground_truth_from(const DoubleArray& boxes, const IntArray& class_ids,
                                               const std::optional<IntArray>& image_ids) {
  const std::vector<mg::Box> b = boxes_from(boxes);
  if (static_cast<std::size_t>(class_ids.size()) != b.size() ||
      (image_ids && static_cast<std::size_t>(image_ids->size()) != b.size())) {
    throw std::invalid_argument("ground-truth arrays must have matching lengths");
  }
  std::vector<mg::GroundTruth> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    out.push_back({b[i], static_cast<int>(class_ids.data()[i]), image_ids ? image_ids->data()[i] : 0});
  }
  return out;
}

mg::Strategy strategy_from(const std::string& name) {
  for (mg::Strategy s : {mg::Strategy::kStatic, mg::Strategy::kLocalizeToClassify,
                         mg::Strategy::kLocalizeToClassifyFixed, mg::Strategy::kClassifyToLocalize,
                         mg::Strategy::kMutual}) {
    if (mg::to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown strategy \"" + name + "\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Label assignment for single-stage detectors: static IoU matching, "
            "localize-to-classify, classify-to-localize and mutual guidance.";

  py::class_<mg::Box>(m, "Box")
      .def(py::init<double, double, double, double>(), py::arg("x_min"), py::arg("y_min"),
           py::arg("x_max"), py::arg("y_max"))
      .def_static("from_xywh", &mg::Box::FromXYWH, py::arg("x"), py::arg("y"), py::arg("width"),
                  py::arg("height"))
      .def_property_readonly("x_min", &mg::Box::x_min)
      .def_property_readonly("y_min", &mg::Box::y_min)
      .def_property_readonly("x_max", &mg::Box::x_max)
      .def_property_readonly("y_max", &mg::Box::y_max)
      .def_property_readonly("width", &mg::Box::width)
      .def_property_readonly("height", &mg::Box::height)
      .def_property_readonly("area", [](const mg::Box& b) { return mg::area(b); })
      .def("__eq__", [](const mg::Box& a, const mg::Box& b) { return a == b; })
      .def("__repr__", [](const mg::Box& b) {
        std::ostringstream s;
        s << "Box(" << b.x_min() << ", " << b.y_min() << ", " << b.x_max() << ", " << b.y_max() << ")";
        return s.str();
      });

  m.def("iou", &mg::iou, py::arg("a"), py::arg("b"));
  m.def(
      "iou_matrix",
      [](const DoubleArray& anchors, const DoubleArray& objects) {
        return matrix_to(mg::iou_matrix(boxes_from(anchors), boxes_from(objects)));
      },
      py::arg("anchors"), py::arg("objects"), "IoU of every (n, 4) anchor against every (m, 4) object.");

  py::class_<mg::LevelSpec>(m, "LevelSpec")
      .def(py::init([](int stride, std::vector<double> scales, std::vector<double> ratios) {
             return mg::LevelSpec{stride, std::move(scales), std::move(ratios)};
           }),
           py::arg("stride"), py::arg("scales"), py::arg("aspect_ratios"))
      .def_readwrite("stride", &mg::LevelSpec::stride)
      .def_readwrite("scales", &mg::LevelSpec::scales)
      .def_readwrite("aspect_ratios", &mg::LevelSpec::aspect_ratios);

  py::class_<mg::AnchorGridSpec>(m, "AnchorGridSpec")
      .def(py::init([](int width, int height, std::vector<mg::LevelSpec> levels) {
             mg::AnchorGridSpec spec{width, height, std::move(levels)};
             spec.validate();
             return spec;
           }),
           py::arg("image_width"), py::arg("image_height"), py::arg("levels"))
      .def_static("default", &mg::AnchorGridSpec::Default)
      .def_readwrite("image_width", &mg::AnchorGridSpec::image_width)
      .def_readwrite("image_height", &mg::AnchorGridSpec::image_height)
      .def_readwrite("levels", &mg::AnchorGridSpec::levels);

  m.def(
      "generate_anchors",
      [](const mg::AnchorGridSpec& spec) { return boxes_to(mg::generate_anchors(spec).boxes); },
      py::arg("spec") = mg::AnchorGridSpec::Default(), "Anchor boxes as an (n, 4) array.");
  m.def(
      "generate_points",
      [](const mg::AnchorGridSpec& spec) {
        const mg::PointSet set = mg::generate_points(spec);
        py::array_t<double> xy({static_cast<py::ssize_t>(set.size()), py::ssize_t{2}});
        auto w = xy.mutable_unchecked<2>();
        std::vector<std::size_t> levels;
        for (std::size_t i = 0; i < set.size(); ++i) {
          w(static_cast<py::ssize_t>(i), 0) = set.points[i].x;
          w(static_cast<py::ssize_t>(i), 1) = set.points[i].y;
          levels.push_back(set.points[i].level);
        }
        return py::make_tuple(xy, levels);
      },
      py::arg("spec") = mg::AnchorGridSpec::Default(), "Point coordinates (n, 2) and their levels.");

  m.def("amplified_iou", &mg::amplified_iou, py::arg("iou"), py::arg("p"), py::arg("sigma") = 2.0);
  m.def(
      "static_assign",
      [](const DoubleArray& iou_anchor, double pos, double neg) {
        return assignment_to(mg::static_assign(matrix_from(iou_anchor), matching(pos, neg, 2.0)));
      },
      py::arg("iou_anchor"), py::arg("pos_threshold") = 0.5, py::arg("neg_threshold") = 0.4,
      "Labels are encoded as the object index, -1 for Negative and -2 for Ignored.");
  m.def(
      "localize_to_classify",
      [](const DoubleArray& iou_anchor, const DoubleArray& iou_regressed, double pos, double neg) {
        return task_labels_to(mg::localize_to_classify(matrix_from(iou_anchor), matrix_from(iou_regressed),
                                                       matching(pos, neg, 2.0)));
      },
      py::arg("iou_anchor"), py::arg("iou_regressed"), py::arg("pos_threshold") = 0.5,
      py::arg("neg_threshold") = 0.4);
  m.def(
      "classify_to_localize",
      [](const DoubleArray& iou_anchor, const DoubleArray& scores, double sigma, double pos, double neg) {
        return task_labels_to(mg::classify_to_localize(matrix_from(iou_anchor), matrix_from(scores),
                                                       matching(pos, neg, sigma)));
      },
      py::arg("iou_anchor"), py::arg("scores"), py::arg("sigma") = 2.0, py::arg("pos_threshold") = 0.5,
      py::arg("neg_threshold") = 0.4);
  m.def(
      "mutual_guidance_assign",
      [](const DoubleArray& iou_anchor, const DoubleArray& iou_regressed, const DoubleArray& scores,
         double sigma, double pos, double neg) {
        return assignment_to(mg::mutual_guidance_assign(matrix_from(iou_anchor), matrix_from(iou_regressed),
                                                        matrix_from(scores), matching(pos, neg, sigma)));
      },
      py::arg("iou_anchor"), py::arg("iou_regressed"), py::arg("scores"), py::arg("sigma") = 2.0,
      py::arg("pos_threshold") = 0.5, py::arg("neg_threshold") = 0.4);

  m.def("centerness", &mg::centerness, py::arg("x"), py::arg("y"), py::arg("gt"));
  m.def(
      "fcos_assign_original",
      [](const mg::AnchorGridSpec& spec, const DoubleArray& objects, std::optional<double> radius) {
        return point_assignment_to(mg::fcos_assign_original(mg::generate_points(spec), boxes_from(objects), radius));
      },
      py::arg("spec"), py::arg("objects"), py::arg("center_sampling_radius") = py::none());
  m.def(
      "fcos_mutual_assign",
      [](const mg::AnchorGridSpec& spec, const DoubleArray& objects, const DoubleArray& iou_regressed,
         const DoubleArray& scores, double sigma, std::optional<double> radius) {
        const mg::PointSet points = mg::generate_points(spec);
        const std::vector<mg::Box> objs = boxes_from(objects);
        const mg::PointAssignment original = mg::fcos_assign_original(points, objs, radius);
        return point_assignment_to(mg::fcos_mutual_assign(points, objs, original, matrix_from(iou_regressed),
                                                          matrix_from(scores), sigma));
      },
      py::arg("spec"), py::arg("objects"), py::arg("iou_regressed"), py::arg("scores"), py::arg("sigma") = 2.0,
      py::arg("center_sampling_radius") = py::none());

  m.def(
      "nms",
      [](const DoubleArray& boxes, const DoubleArray& scores, const IntArray& class_ids, double threshold,
         const std::optional<IntArray>& image_ids) {
        return mg::nms_indices(detections_from(boxes, scores, class_ids, image_ids), threshold);
      },
      py::arg("boxes"), py::arg("scores"), py::arg("class_ids"), py::arg("iou_threshold") = 0.5,
      py::arg("image_ids") = py::none(), "Indices of the kept detections, highest score first.");
  m.def(
      "average_precision",
      [](const DoubleArray& det_boxes, const DoubleArray& det_scores, const IntArray& det_classes,
         const DoubleArray& gt_boxes, const IntArray& gt_classes, const std::optional<IntArray>& det_images,
         const std::optional<IntArray>& gt_images, bool area_bands) {
        mg::EvalOptions opts;
        opts.area_bands = area_bands;
        const mg::EvalResult r =
            mg::average_precision(detections_from(det_boxes, det_scores, det_classes, det_images),
                                  ground_truth_from(gt_boxes, gt_classes, gt_images), opts);
        py::dict d;
        d["ap"] = r.ap;
        d["ap50"] = r.ap50;
        d["ap75"] = r.ap75;
        d["per_threshold"] = r.per_threshold;
        d["ap_small"] = r.ap_small;
        d["ap_medium"] = r.ap_medium;
        d["ap_large"] = r.ap_large;
        return d;
      },
      py::arg("det_boxes"), py::arg("det_scores"), py::arg("det_classes"), py::arg("gt_boxes"),
      py::arg("gt_classes"), py::arg("det_images") = py::none(), py::arg("gt_images") = py::none(),
      py::arg("area_bands") = false);

  m.def(
      "synth_scene",
      [](std::uint64_t seed, std::size_t min_objects, std::size_t max_objects) {
        mg::SceneSpec spec;
        spec.seed = seed;
        spec.min_objects = min_objects;
        spec.max_objects = max_objects;
        const mg::Scene s = mg::synth_scene(spec);
        return py::make_tuple(boxes_to(s.boxes), s.class_ids);
      },
      py::arg("seed") = 0, py::arg("min_objects") = 1, py::arg("max_objects") = 5,
      "Boxes (n, 4) and class ids of a synthetic 320x320 scene.");
  m.def(
      "trajectory_counts",
      [](std::uint64_t seed, const std::string& strategy, std::size_t steps) {
        mg::SceneSpec spec;
        spec.seed = seed;
        mg::TrajectoryConfig cfg;
        cfg.steps = steps;
        cfg.validate();
        const mg::Scene scene = mg::synth_scene(spec);
        const mg::AnchorSet anchors = mg::generate_anchors(mg::AnchorGridSpec::Default());
        return mg::run_trajectory(scene, anchors.boxes, cfg, {}, strategy_from(strategy), seed)
            .positive_counts();
      },
      py::arg("seed") = 0, py::arg("strategy") = "l2c", py::arg("steps") = 10,
      "Per-step positive counts of one strategy (static, l2c, l2c-fixed, c2l, mutual) on a synthetic scene.");

}

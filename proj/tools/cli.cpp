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
#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "mutualguide/annotations.hpp"
#include "mutualguide/evaluation.hpp"
#include "mutualguide/fcos_assignment.hpp"
#include "mutualguide/serialization.hpp"
#include "mutualguide/svg.hpp"

namespace mutualguide::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Seed for an image's simulated predictions.
std::uint64_t prediction_seed(std::uint64_t seed, std::int64_t image_id) {
  return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(image_id);
}

void write_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    if (!f) throw std::runtime_error("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_json(const fs::path& path, const json& doc) { write_atomically(path, doc.dump(2) + "\n"); }

}  // namespace

void RunConfig::validate() const {
  grid.validate();
  matching.validate();
  trajectory.validate();
  if (annotations && synthetic) {
    throw std::invalid_argument("choose either --annotations or --synthetic, not both");
  }
  if (annotations && !fs::exists(*annotations)) {
    throw std::invalid_argument("annotation file not found: " + annotations->string());
  }
  if (!annotations) scene.validate();
  if (detections && !fs::exists(*detections)) {
    throw std::invalid_argument("detection file not found: " + detections->string());
  }
  if (std::find(kStrategies.begin(), kStrategies.end(), strategy) == kStrategies.end()) {
    throw std::invalid_argument("unknown strategy \"" + strategy + "\"");
  }
  if (!(progress >= 0.0 && progress <= 1.0)) throw std::invalid_argument("progress must lie in [0, 1]");
  if (synthetic_images == 0) throw std::invalid_argument("synthetic_images must be positive");
  if (center_sampling_radius && !(*center_sampling_radius > 0.0)) {
    throw std::invalid_argument("centre sampling radius must be positive");
  }
}

RunConfig config_from_json(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw std::invalid_argument("config: expected a JSON object");
  static const std::vector<std::string> known = {
      "grid",     "matching", "scene",       "synthetic_images", "trajectory", "progress",
      "fcos",     "annotations", "synthetic", "seed",            "strategy",   "out",
      "svg",      "detections", "area_bands", "max_detections"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument("config: unknown key \"" + key + "\"");
    }
  }
  const auto resolve = [&](const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  RunConfig cfg;
  if (doc.contains("grid")) cfg.grid = anchor_grid_from_json(doc["grid"]);
  if (doc.contains("matching")) cfg.matching = matching_from_json(doc["matching"]);
  if (doc.contains("scene")) cfg.scene = scene_spec_from_json(doc["scene"]);
  if (doc.contains("trajectory")) cfg.trajectory = trajectory_from_json(doc["trajectory"]);
  cfg.synthetic_images = doc.value("synthetic_images", cfg.synthetic_images);
  cfg.progress = doc.value("progress", cfg.progress);
  if (auto it = doc.find("fcos"); it != doc.end()) {
    if (auto r = it->find("center_sampling_radius"); r != it->end() && !r->is_null()) {
      cfg.center_sampling_radius = r->get<double>();
    }
  }
  if (auto it = doc.find("annotations"); it != doc.end() && !it->is_null()) {
    cfg.annotations = resolve(it->get<std::string>());
  }
  cfg.synthetic = doc.value("synthetic", false);
  cfg.seed = doc.value("seed", cfg.seed);
  cfg.strategy = doc.value("strategy", cfg.strategy);
  if (auto it = doc.find("out"); it != doc.end()) cfg.out = resolve(it->get<std::string>());
  cfg.svg = doc.value("svg", false);
  if (auto it = doc.find("detections"); it != doc.end() && !it->is_null()) {
    cfg.detections = resolve(it->get<std::string>());
  }
  cfg.area_bands = doc.value("area_bands", false);
  cfg.max_detections = doc.value("max_detections", cfg.max_detections);
  return cfg;
}

std::vector<SceneInput> load_scenes(const RunConfig& cfg, std::ostream& err) {
  std::vector<SceneInput> scenes;
  if (cfg.annotations) {
    const AnnotationSet set = load_coco_annotations(*cfg.annotations);
    for (const ImageRecord& img : set.images) {
      const auto gts = set.for_image(img.id);
      if (gts.empty()) {
        err << "warning: image " << img.id << " has no annotations; skipped\n";
        continue;
      }
      SceneInput in;
      in.image_id = img.id;
      in.scene.image_width = img.width;
      in.scene.image_height = img.height;
      for (const GroundTruth& g : gts) {
        in.scene.boxes.push_back(g.box);
        in.scene.class_ids.push_back(g.class_id);
      }
      scenes.push_back(std::move(in));
    }
    return scenes;
  }
  for (std::size_t k = 0; k < cfg.synthetic_images; ++k) {
    SceneSpec spec = cfg.scene;
    spec.seed = cfg.seed + k;
    scenes.push_back({static_cast<std::int64_t>(k + 1), synth_scene(spec)});
  }
  return scenes;
}

AnchorGridSpec grid_for_scene(const AnchorGridSpec& grid, const Scene& scene) {
  int step = 1;
  for (const LevelSpec& level : grid.levels) step = std::lcm(step, level.stride);
  AnchorGridSpec out = grid;
  out.image_width = (scene.image_width + step - 1) / step * step;
  out.image_height = (scene.image_height + step - 1) / step * step;
  return out;
}

namespace {

std::vector<Box> positive_boxes(const std::vector<Label>& labels, const std::vector<Box>& boxes) {
  std::vector<Box> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].is_positive()) out.push_back(boxes[i]);
  }
  return out;
}

std::vector<std::pair<double, double>> positive_points(const std::vector<Label>& labels,
                                                       const PointSet& points) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].is_positive()) out.emplace_back(points.points[i].x, points.points[i].y);
  }
  return out;
}

struct LabelSets {
  std::vector<Label> cls;
  std::vector<Label> loc;
};

void assign_anchors(const RunConfig& cfg, const SceneInput& in, std::ostream& out) {
  const AnchorSet anchors = generate_anchors(grid_for_scene(cfg.grid, in.scene));
  const IoUMatrix iou_anchor = iou_matrix(anchors.boxes, in.scene.boxes);
  const TrajectorySnapshot snap = synth_predictions(in.scene, anchors.boxes, cfg.trajectory,
                                                    cfg.progress, prediction_seed(cfg.seed, in.image_id));
  const IoUMatrix iou_reg = regressed_iou(snap, in.scene);

  const Assignment base = static_assign(iou_anchor, cfg.matching);
  Assignment chosen = base;
  if (cfg.strategy == "l2c") {
    TaskLabels cls = localize_to_classify(iou_reg, base.counts);
    chosen.classification = std::move(cls.labels);
    chosen.warnings.insert(chosen.warnings.end(), cls.warnings.begin(), cls.warnings.end());
  } else if (cfg.strategy == "c2l") {
    TaskLabels loc = classify_to_localize(iou_anchor, snap.scores, base.counts, cfg.matching.sigma);
    chosen.localization = std::move(loc.labels);
    chosen.warnings.insert(chosen.warnings.end(), loc.warnings.begin(), loc.warnings.end());
  } else if (cfg.strategy == "mutual") {
    chosen = mutual_guidance_assign(iou_anchor, iou_reg, snap.scores, cfg.matching);
  }

  const std::string id = std::to_string(in.image_id);
  write_json(cfg.out / (id + ".static.json"), assignment_to_json(base, "static", in.image_id));
  if (cfg.strategy != "static") {
    write_json(cfg.out / (id + "." + cfg.strategy + ".json"),
               assignment_to_json(chosen, cfg.strategy, in.image_id));
  }
  const std::size_t objects = in.scene.boxes.size();
  const json diff = diff_to_json(base.classification, base.localization, chosen.classification,
                                 chosen.localization, objects, "static", cfg.strategy, in.image_id);
  write_json(cfg.out / (id + ".diff.json"), diff);

  if (cfg.svg) {
    std::vector<SvgLayer> layers;
    layers.push_back({"static", kStaticColor, positive_boxes(base.classification, anchors.boxes), {}});
    if (cfg.strategy != "static") {
      if (cfg.strategy != "c2l") {
        layers.push_back({cfg.strategy + " classification", kLocalizeToClassifyColor,
                          positive_boxes(chosen.classification, anchors.boxes), {}});
      }
      if (cfg.strategy != "l2c") {
        layers.push_back({cfg.strategy + " localization", kClassifyToLocalizeColor,
                          positive_boxes(chosen.localization, anchors.boxes), {}});
      }
    }
    write_atomically(cfg.out / (id + ".svg"),
                     render_svg(in.scene.image_width, in.scene.image_height, in.scene.boxes, layers));
  }

  out << "image " << id << ": static " << count_positives(base.classification) << " positives; "
      << cfg.strategy << " classification " << count_positives(chosen.classification)
      << ", localization " << count_positives(chosen.localization) << "; changed classification "
      << diff["classification"]["only_candidate_count"].get<std::size_t>() << "+/"
      << diff["classification"]["only_baseline_count"].get<std::size_t>() << "-, localization "
      << diff["localization"]["only_candidate_count"].get<std::size_t>() << "+/"
      << diff["localization"]["only_baseline_count"].get<std::size_t>() << "-\n";
  for (const std::string& w : chosen.warnings) out << "  note: " << w << '\n';
}

void assign_points(const RunConfig& cfg, const SceneInput& in, std::ostream& out) {
  const PointSet points = generate_points(grid_for_scene(cfg.grid, in.scene));
  const std::vector<Box> priors = point_prior_boxes(points);
  const TrajectorySnapshot snap = synth_predictions(in.scene, priors, cfg.trajectory, cfg.progress,
                                                    prediction_seed(cfg.seed, in.image_id));
  const PointAssignment base =
      fcos_assign_original(points, in.scene.boxes, cfg.center_sampling_radius);
  PointAssignment chosen = base;
  if (cfg.strategy == "fcos-mutual") {
    chosen = fcos_mutual_assign(points, in.scene.boxes, base, regressed_iou(snap, in.scene),
                                snap.scores, cfg.matching.sigma);
  }

  const std::string id = std::to_string(in.image_id);
  write_json(cfg.out / (id + ".fcos.json"), point_assignment_to_json(base, "fcos", in.image_id));
  if (cfg.strategy != "fcos") {
    write_json(cfg.out / (id + "." + cfg.strategy + ".json"),
               point_assignment_to_json(chosen, cfg.strategy, in.image_id));
  }
  json diff = diff_to_json(base.classification, base.localization, chosen.classification,
                           chosen.localization, in.scene.boxes.size(), "fcos", cfg.strategy,
                           in.image_id);
  diff["mode"] = "points";
  write_json(cfg.out / (id + ".diff.json"), diff);

  if (cfg.svg) {
    std::vector<SvgLayer> layers;
    layers.push_back({"fcos", kStaticColor, {}, positive_points(base.classification, points)});
    if (cfg.strategy != "fcos") {
      layers.push_back({cfg.strategy + " classification", kLocalizeToClassifyColor, {},
                        positive_points(chosen.classification, points)});
      layers.push_back({cfg.strategy + " localization", kClassifyToLocalizeColor, {},
                        positive_points(chosen.localization, points)});
    }
    write_atomically(cfg.out / (id + ".svg"),
                     render_svg(in.scene.image_width, in.scene.image_height, in.scene.boxes, layers));
  }
  out << "image " << id << ": fcos " << count_positives(base.classification) << " positives; "
      << cfg.strategy << " classification " << count_positives(chosen.classification)
      << ", localization " << count_positives(chosen.localization) << '\n';
}

}  // namespace

int cmd_assign(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  fs::create_directories(cfg.out);
  const bool points = cfg.strategy == "fcos" || cfg.strategy == "fcos-mutual";
  for (const SceneInput& in : load_scenes(cfg, err)) {
    if (points) {
      assign_points(cfg, in, out);
    } else {
      assign_anchors(cfg, in, out);
    }
  }
  return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  fs::create_directories(cfg.out);
  const std::vector<Strategy> strategies = {Strategy::kStatic, Strategy::kLocalizeToClassify,
                                            Strategy::kLocalizeToClassifyFixed,
                                            Strategy::kClassifyToLocalize, Strategy::kMutual};
  json progress = json::array();
  for (std::size_t k = 0; k < cfg.trajectory.steps; ++k) progress.push_back(cfg.trajectory.progress(k));

  json images = json::array();
  bool dynamic_constant = true;
  std::size_t fixed_initial = 0;
  std::size_t fixed_final = 0;
  for (const SceneInput& in : load_scenes(cfg, err)) {
    const AnchorSet anchors = generate_anchors(grid_for_scene(cfg.grid, in.scene));
    json series = json::object();
    json merged = json::object();
    for (Strategy s : strategies) {
      const TrajectoryResult r = run_trajectory(in.scene, anchors.boxes, cfg.trajectory,
                                                cfg.matching, s, prediction_seed(cfg.seed, in.image_id));
      const auto counts = r.positive_counts();
      series[to_string(s)] = counts;
      json m = json::array();
      for (const TrajectoryStep& step : r.steps) {
        m.push_back({{"classification", step.classification_positives},
                     {"localization", step.localization_positives}});
      }
      merged[to_string(s)] = m;
      if (s == Strategy::kLocalizeToClassify) {
        dynamic_constant = dynamic_constant &&
                           std::adjacent_find(counts.begin(), counts.end(),
                                              std::not_equal_to<>()) == counts.end();
      }
      if (s == Strategy::kLocalizeToClassifyFixed) {
        fixed_initial += counts.front();
        fixed_final += counts.back();
      }
    }
    images.push_back({{"image_id", in.image_id},
                      {"object_count", in.scene.boxes.size()},
                      {"anchor_count", anchors.size()},
                      {"selected_positives", series},
                      {"merged_positives", merged}});
  }
  const double growth =
      fixed_initial == 0 ? 0.0 : static_cast<double>(fixed_final) / static_cast<double>(fixed_initial);
  const json doc = {{"format_version", kFormatVersion},
                    {"steps", cfg.trajectory.steps},
                    {"progress", progress},
                    {"images", images},
                    {"verdict",
                     {{"dynamic_constant", dynamic_constant},
                      {"fixed_initial", fixed_initial},
                      {"fixed_final", fixed_final},
                      {"fixed_growth_factor", growth}}}};
  write_json(cfg.out / "trajectory.json", doc);

  std::ostringstream factor;
  factor << std::fixed << std::setprecision(3) << growth;
  out << "dynamic constant: " << (dynamic_constant ? "yes" : "no") << '\n';
  out << "fixed growth factor: " << factor.str() << " (" << fixed_initial << " -> " << fixed_final
      << ")\n";
  return 0;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  cfg.validate();
  if (!cfg.annotations) throw std::invalid_argument("evaluate needs --annotations");
  if (!cfg.detections) throw std::invalid_argument("evaluate needs --detections");
  const AnnotationSet set = load_coco_annotations(*cfg.annotations);
  const std::vector<Detection> dets = load_coco_detections(*cfg.detections);
  check_detection_images(dets, set);

  EvalOptions options;
  options.max_detections = cfg.max_detections;
  options.area_bands = cfg.area_bands;
  const EvalResult r = average_precision(dets, set.annotations, options);
  const MisalignmentReport mis = misalignment_rate(dets, set.annotations);

  json doc = eval_result_to_json(r);
  doc["misalignment_rate"] = mis.rate;
  doc["detection_count"] = dets.size();
  doc["ground_truth_count"] = set.annotations.size();
  fs::create_directories(cfg.out);
  write_json(cfg.out / "eval.json", doc);

  const auto row = [&out](const std::string& name, const std::optional<double>& v) {
    out << std::left << std::setw(12) << name;
    if (v) {
      out << std::fixed << std::setprecision(3) << *v << '\n';
    } else {
      out << "n/a\n";
    }
  };
  out << std::left << std::setw(12) << "metric" << "value\n";
  row("AP", r.ap);
  row("AP50", r.ap50);
  row("AP75", r.ap75);
  if (cfg.area_bands) {
    row("AP_s", r.ap_small);
    row("AP_m", r.ap_medium);
    row("AP_l", r.ap_large);
  }
  row("misaligned", mis.rate);
  return 0;
}

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> annotations;
  bool synthetic = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> strategy;
  std::optional<double> sigma;
  std::optional<std::string> out;
  bool svg = false;
  std::optional<std::string> detections;
  bool area_bands = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON configuration file");
  sub->add_option("--annotations", f.annotations, "COCO-style annotation file");
  sub->add_flag("--synthetic", f.synthetic, "generate synthetic scenes");
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--strategy", f.strategy, "static|l2c|c2l|mutual|fcos|fcos-mutual")
      ->check(CLI::IsMember(kStrategies));
  sub->add_option("--sigma", f.sigma, "amplification sigma (> 1)");
  sub->add_option("--out", f.out, "output directory");
  sub->add_flag("--svg", f.svg, "also write SVG renderings");
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (f.config) {
    const fs::path path(*f.config);
    cfg = config_from_json(read_json_file(path), path.parent_path());
  }
  if (f.annotations) cfg.annotations = fs::path(*f.annotations);
  if (f.synthetic) {
    cfg.synthetic = true;
    if (f.annotations == std::nullopt) cfg.annotations.reset();
  }
  if (f.seed) cfg.seed = *f.seed;
  if (f.strategy) cfg.strategy = *f.strategy;
  if (f.sigma) cfg.matching.sigma = *f.sigma;
  if (f.out) cfg.out = fs::path(*f.out);
  if (f.svg) cfg.svg = true;
  if (f.detections) cfg.detections = fs::path(*f.detections);
  if (f.area_bands) cfg.area_bands = true;
  return cfg;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Static and mutually guided label assignment for object detectors"};
  app.require_subcommand(1);
  Flags flags;
  CLI::App* assign = app.add_subcommand("assign", "compare label assignment strategies");
  CLI::App* simulate = app.add_subcommand("simulate", "positive-count trajectories");
  CLI::App* evaluate = app.add_subcommand("evaluate", "COCO-style AP of a detection file");
  for (CLI::App* sub : {assign, simulate, evaluate}) add_common(sub, flags);
  evaluate->add_option("--detections", flags.detections, "COCO result-format detections")->required();
  evaluate->add_flag("--area-bands", flags.area_bands, "also report AP_s / AP_m / AP_l");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const RunConfig cfg = resolve(flags);
    if (assign->parsed()) return cmd_assign(cfg, out, err);
    if (simulate->parsed()) return cmd_simulate(cfg, out, err);
    return cmd_evaluate(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mutualguide::cli

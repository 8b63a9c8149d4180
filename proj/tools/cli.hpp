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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mutualguide/anchors.hpp"
#include "mutualguide/assignment.hpp"
#include "mutualguide/simulator.hpp"

namespace mutualguide::cli {

struct RunConfig {
  AnchorGridSpec grid = AnchorGridSpec::Default();
  MatchingConfig matching;
  SceneSpec scene;
  std::size_t synthetic_images = 1;
  TrajectoryConfig trajectory;
  double progress = 0.5;  // training progress at which `assign` samples predictions
  std::optional<double> center_sampling_radius;

  std::optional<std::filesystem::path> annotations;
  bool synthetic = false;
  std::uint64_t seed = 0;
  std::string strategy = "mutual";
  std::filesystem::path out = "out";
  bool svg = false;

  std::optional<std::filesystem::path> detections;
  bool area_bands = false;
  std::size_t max_detections = 100;

  // One input source, known strategy, existing paths.
  void validate() const;
};

inline const std::vector<std::string> kStrategies = {"static", "l2c",  "c2l",
                                                     "mutual", "fcos", "fcos-mutual"};

// Reads a JSON config document; relative paths resolve against `base_dir`.
RunConfig config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);

struct SceneInput {
  std::int64_t image_id = 0;
  Scene scene;
};

// Scenes from the annotation file (images without annotations are skipped
// with a warning on `err`) or from the synthetic generator.
std::vector<SceneInput> load_scenes(const RunConfig& cfg, std::ostream& err);

// Grid with the image size replaced by the scene's, rounded up to a multiple
// of every stride.
AnchorGridSpec grid_for_scene(const AnchorGridSpec& grid, const Scene& scene);

int cmd_assign(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full command line, including the program name in argv[0].
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mutualguide::cli

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
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mutualguide/evaluation.hpp"

namespace mutualguide {

// Raised for malformed annotation or detection files; the message names the
// offending record, e.g. "annotations[3]: bbox must hold 4 numbers".
class AnnotationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ImageRecord {
  std::int64_t id = 0;
  int width = 0;
  int height = 0;
};

struct Category {
  int id = 0;
  std::string name;
};

// Minimal COCO subset: images (id, width, height), annotations (image_id,
// bbox [x, y, w, h], category_id) and categories (id, name). Boxes are
// converted to corner form on load.
struct AnnotationSet {
  std::vector<ImageRecord> images;
  std::vector<Category> categories;
  std::vector<GroundTruth> annotations;

  std::vector<GroundTruth> for_image(std::int64_t image_id) const;
};

AnnotationSet parse_coco_annotations(const nlohmann::json& doc);
AnnotationSet load_coco_annotations(const std::filesystem::path& path);

// COCO result list: [{"image_id", "category_id", "bbox": [x, y, w, h],
// "score"}, ...].
std::vector<Detection> parse_coco_detections(const nlohmann::json& doc);
std::vector<Detection> load_coco_detections(const std::filesystem::path& path);

// Throws AnnotationError listing every detection image id that has no image
// record.
void check_detection_images(const std::vector<Detection>& detections, const AnnotationSet& set);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace mutualguide

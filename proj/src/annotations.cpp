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
#include "mutualguide/annotations.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace mutualguide {

using nlohmann::json;

namespace {

std::string record(const char* list, std::size_t index) {
  return std::string(list) + "[" + std::to_string(index) + "]";
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw AnnotationError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw AnnotationError(where + ": missing \"" + key + "\"");
  return *it;
}

template <typename T>
T number(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number()) throw AnnotationError(where + ": \"" + key + "\" must be a number");
  return v.get<T>();
}

Box parse_bbox(const json& obj, const std::string& where) {
  const json& bbox = field(obj, "bbox", where);
  if (!bbox.is_array() || bbox.size() != 4) {
    throw AnnotationError(where + ": bbox must hold 4 numbers");
  }
  for (const json& v : bbox) {
    if (!v.is_number()) throw AnnotationError(where + ": bbox must hold 4 numbers");
  }
  try {
    return Box::FromXYWH(bbox[0].get<double>(), bbox[1].get<double>(), bbox[2].get<double>(),
                         bbox[3].get<double>());
  } catch (const std::invalid_argument& e) {
    throw AnnotationError(where + ": " + e.what());
  }
}

const json& list(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_array()) {
    throw AnnotationError(std::string("annotation file: \"") + key + "\" must be an array");
  }
  return *it;
}

}  // namespace

std::vector<GroundTruth> AnnotationSet::for_image(std::int64_t image_id) const {
  std::vector<GroundTruth> out;
  for (const GroundTruth& g : annotations) {
    if (g.image_id == image_id) out.push_back(g);
  }
  return out;
}

AnnotationSet parse_coco_annotations(const json& doc) {
  if (!doc.is_object()) throw AnnotationError("annotation file: expected a JSON object");
  AnnotationSet set;
  std::set<std::int64_t> image_ids;
  std::set<int> category_ids;

  const json& images = list(doc, "images");
  for (std::size_t k = 0; k < images.size(); ++k) {
    const std::string where = record("images", k);
    ImageRecord img{number<std::int64_t>(images[k], "id", where),
                    number<int>(images[k], "width", where), number<int>(images[k], "height", where)};
    if (img.width <= 0 || img.height <= 0) {
      throw AnnotationError(where + ": width and height must be positive");
    }
    if (!image_ids.insert(img.id).second) throw AnnotationError(where + ": duplicate image id");
    set.images.push_back(img);
  }

  const json& categories = list(doc, "categories");
  for (std::size_t k = 0; k < categories.size(); ++k) {
    const std::string where = record("categories", k);
    Category c;
    c.id = number<int>(categories[k], "id", where);
    const json& name = field(categories[k], "name", where);
    if (!name.is_string()) throw AnnotationError(where + ": \"name\" must be a string");
    c.name = name.get<std::string>();
    if (!category_ids.insert(c.id).second) throw AnnotationError(where + ": duplicate category id");
    set.categories.push_back(std::move(c));
  }

  const json& annotations = list(doc, "annotations");
  for (std::size_t k = 0; k < annotations.size(); ++k) {
    const std::string where = record("annotations", k);
    const auto image_id = number<std::int64_t>(annotations[k], "image_id", where);
    const auto category_id = number<int>(annotations[k], "category_id", where);
    if (!image_ids.contains(image_id)) {
      throw AnnotationError(where + ": unknown image_id " + std::to_string(image_id));
    }
    if (!category_ids.contains(category_id)) {
      throw AnnotationError(where + ": unknown category_id " + std::to_string(category_id));
    }
    set.annotations.push_back(GroundTruth{parse_bbox(annotations[k], where), category_id, image_id});
  }
  return set;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw AnnotationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw AnnotationError(path.string() + ": invalid JSON: " + e.what());
  }
}

AnnotationSet load_coco_annotations(const std::filesystem::path& path) {
  return parse_coco_annotations(read_json_file(path));
}

std::vector<Detection> parse_coco_detections(const json& doc) {
  if (!doc.is_array()) throw AnnotationError("detection file: expected a JSON array");
  std::vector<Detection> out;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const std::string where = record("detections", k);
    Detection d{parse_bbox(doc[k], where), number<int>(doc[k], "category_id", where),
                number<double>(doc[k], "score", where),
                number<std::int64_t>(doc[k], "image_id", where)};
    if (!(d.score >= 0.0 && d.score <= 1.0)) {
      throw AnnotationError(where + ": score must lie in [0, 1]");
    }
    out.push_back(d);
  }
  return out;
}

std::vector<Detection> load_coco_detections(const std::filesystem::path& path) {
  return parse_coco_detections(read_json_file(path));
}

void check_detection_images(const std::vector<Detection>& detections, const AnnotationSet& set) {
  std::set<std::int64_t> known;
  for (const ImageRecord& img : set.images) known.insert(img.id);
  std::set<std::int64_t> unknown;
  for (const Detection& d : detections) {
    if (!known.contains(d.image_id)) unknown.insert(d.image_id);
  }
  if (unknown.empty()) return;
  std::ostringstream msg;
  msg << "detections reference unknown image ids:";
  for (std::int64_t id : unknown) msg << ' ' << id;
  throw AnnotationError(msg.str());
}

}  // namespace mutualguide

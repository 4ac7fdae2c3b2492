// Copyright 2026 The vrukit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vrukit/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "vrukit/error.hpp"
#include "vrukit/text.hpp"

namespace vrukit {

using nlohmann::json;

std::string_view to_string(SourceDataset dataset) {
  switch (dataset) {
    case SourceDataset::kKitti:
      return "kitti";
    case SourceDataset::kBdd100k:
      return "bdd100k";
    case SourceDataset::kFlir:
      return "flir";
    case SourceDataset::kYolo:
      return "yolo";
  }
  return "unknown";
}

SourceDataset parse_source_dataset(std::string_view text) {
  const std::string folded = fold_case(trim(text));
  if (folded == "kitti") return SourceDataset::kKitti;
  if (folded == "bdd100k" || folded == "bdd") return SourceDataset::kBdd100k;
  if (folded == "flir" || folded == "coco" || folded == "teledyne flir") {
    return SourceDataset::kFlir;
  }
  if (folded == "yolo") return SourceDataset::kYolo;
  throw ConfigError("unknown source dataset '" + std::string(text) + "'");
}

std::string frame_id_from_path(std::string_view path) {
  const auto slash = path.find_last_of("/\\");
  std::string_view name = slash == std::string_view::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string_view::npos && dot > 0) name = name.substr(0, dot);
  return std::string(name);
}

namespace {

BoundingBox checked_box(double x1, double y1, double x2, double y2,
                        const std::string& where) {
  if (x2 < x1 || y2 < y1) {
    throw ValidationError(where + ": box corners out of order (" +
                          std::to_string(x1) + "," + std::to_string(y1) + "," +
                          std::to_string(x2) + "," + std::to_string(y2) + ")");
  }
  const BoundingBox box{x1, y1, x2, y2};
  if (!box.valid()) {
    throw ValidationError(where + ": box coordinates must be finite and non-negative");
  }
  if (!(box.area() > 0.0)) {
    throw ValidationError(where + ": zero-area box");
  }
  return box;
}

double json_number(const json& object, const char* key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end() || !it->is_number()) {
    throw ParseError(where + ": field '" + key + "' missing or not a number");
  }
  return it->get<double>();
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::vector<SourceAnnotation> parse_kitti_label_file(std::string_view text,
                                                     std::string_view frame_id,
                                                     Modality modality) {
  std::vector<SourceAnnotation> out;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() < 15) {
      throw ParseError("expected at least 15 fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    auto number = [&](std::size_t i) {
      const auto value = parse_double(fields[i]);
      if (!value || !std::isfinite(*value)) {
        throw ParseError("field " + std::to_string(i + 1) + " is not a number: '" +
                             std::string(fields[i]) + "'",
                         line_no);
      }
      return *value;
    };
    SourceAnnotation anno;
    anno.source_dataset = SourceDataset::kKitti;
    anno.source_class = std::string(fields[0]);
    anno.frame_id = std::string(frame_id);
    anno.modality = modality;
    KittiMetadata meta;
    meta.truncated = number(1);
    meta.occluded = static_cast<int>(number(2));
    meta.alpha = number(3);
    anno.kitti = meta;
    anno.box = checked_box(number(4), number(5), number(6), number(7),
                           "line " + std::to_string(line_no));
    // Fields 9-15 (dimensions, location, rotation) are validated as numbers
    // and then discarded.
    for (std::size_t i = 8; i < 15; ++i) number(i);
    out.push_back(std::move(anno));
  }
  return out;
}

ParsedFrames parse_bdd100k_json(std::string_view text, Modality modality) {
  const json doc = parse_json_text(text);
  if (!doc.is_array()) throw ParseError("BDD100K labels must be a JSON array of frames");

  ParsedFrames result;
  std::size_t index = 0;
  for (const json& frame : doc) {
    const std::string where_frame = "frame #" + std::to_string(index++);
    if (!frame.is_object() || !frame.contains("name") || !frame["name"].is_string()) {
      throw ParseError(where_frame + ": missing string field 'name'");
    }
    const std::string name = frame["name"].get<std::string>();
    SourceFrame out_frame;
    out_frame.frame_id = frame_id_from_path(name);

    const auto labels = frame.find("labels");
    if (labels != frame.end() && !labels->is_null()) {
      if (!labels->is_array()) throw ParseError("frame '" + name + "': 'labels' is not an array");
      for (const json& label : *labels) {
        ++result.record_count;
        if (!label.is_object() || !label.contains("category") ||
            !label["category"].is_string()) {
          throw ParseError("frame '" + name + "': label without string 'category'");
        }
        const std::string category = label["category"].get<std::string>();
        const auto box2d = label.find("box2d");
        if (box2d == label.end() || box2d->is_null()) {
          result.skipped.push_back({out_frame.frame_id, category, "no box2d"});
          continue;
        }
        if (!box2d->is_object()) {
          throw ParseError("frame '" + name + "': 'box2d' is not an object");
        }
        const std::string where = "frame '" + name + "'";
        SourceAnnotation anno;
        anno.source_dataset = SourceDataset::kBdd100k;
        anno.source_class = category;
        anno.frame_id = out_frame.frame_id;
        anno.modality = modality;
        anno.box = checked_box(json_number(*box2d, "x1", where), json_number(*box2d, "y1", where),
                               json_number(*box2d, "x2", where), json_number(*box2d, "y2", where),
                               where);
        out_frame.annotations.push_back(std::move(anno));
      }
    }
    result.frames.push_back(std::move(out_frame));
  }
  return result;
}

ParsedFrames parse_coco_json(std::string_view text, Modality modality,
                             SourceDataset dataset) {
  const json doc = parse_json_text(text);
  if (!doc.is_object()) throw ParseError("COCO annotations must be a JSON object");
  for (const char* key : {"images", "annotations", "categories"}) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      throw ParseError(std::string("COCO annotations lack array '") + key + "'");
    }
  }

  std::map<std::int64_t, std::string> categories;
  for (const json& cat : doc["categories"]) {
    if (!cat.contains("id") || !cat["id"].is_number_integer() || !cat.contains("name") ||
        !cat["name"].is_string()) {
      throw ParseError("category entry needs integer 'id' and string 'name'");
    }
    categories[cat["id"].get<std::int64_t>()] = cat["name"].get<std::string>();
  }

  ParsedFrames result;
  std::map<std::int64_t, std::size_t> frame_of_image;
  for (const json& image : doc["images"]) {
    if (!image.contains("id") || !image["id"].is_number_integer() ||
        !image.contains("file_name") || !image["file_name"].is_string()) {
      throw ParseError("image entry needs integer 'id' and string 'file_name'");
    }
    const auto id = image["id"].get<std::int64_t>();
    if (frame_of_image.count(id) != 0) {
      throw ValidationError("duplicate image id " + std::to_string(id));
    }
    SourceFrame frame;
    frame.frame_id = frame_id_from_path(image["file_name"].get<std::string>());
    if (image.contains("width") && image["width"].is_number_integer()) {
      frame.image_width = image["width"].get<int>();
    }
    if (image.contains("height") && image["height"].is_number_integer()) {
      frame.image_height = image["height"].get<int>();
    }
    frame_of_image[id] = result.frames.size();
    result.frames.push_back(std::move(frame));
  }

  for (const json& anno_json : doc["annotations"]) {
    ++result.record_count;
    if (!anno_json.is_object()) throw ParseError("annotation entry is not an object");
    for (const char* key : {"image_id", "category_id"}) {
      if (!anno_json.contains(key) || !anno_json[key].is_number_integer()) {
        throw ParseError(std::string("annotation lacks integer '") + key + "'");
      }
    }
    const auto image_id = anno_json["image_id"].get<std::int64_t>();
    const auto category_id = anno_json["category_id"].get<std::int64_t>();
    const auto frame_it = frame_of_image.find(image_id);
    if (frame_it == frame_of_image.end()) {
      throw ValidationError("annotation references unknown image_id " +
                            std::to_string(image_id));
    }
    const auto cat_it = categories.find(category_id);
    if (cat_it == categories.end()) {
      throw ValidationError("annotation references unknown category_id " +
                            std::to_string(category_id));
    }
    SourceFrame& frame = result.frames[frame_it->second];
    const std::string where = "image '" + frame.frame_id + "'";
    const auto bbox = anno_json.find("bbox");
    if (bbox == anno_json.end() || !bbox->is_array() || bbox->size() != 4) {
      throw ParseError(where + ": bbox must be [x, y, width, height]");
    }
    for (const json& v : *bbox) {
      if (!v.is_number()) throw ParseError(where + ": bbox values must be numbers");
    }
    const double x = (*bbox)[0].get<double>();
    const double y = (*bbox)[1].get<double>();
    const double w = (*bbox)[2].get<double>();
    const double h = (*bbox)[3].get<double>();
    if (w < 0.0 || h < 0.0) {
      throw ValidationError(where + ": negative bbox width or height");
    }
    SourceAnnotation anno;
    anno.source_dataset = dataset;
    anno.source_class = cat_it->second;
    anno.frame_id = frame.frame_id;
    anno.modality = modality;
    anno.box = checked_box(x, y, x + w, y + h, where);
    frame.annotations.push_back(std::move(anno));
  }
  return result;
}

std::string write_yolo_label_file(std::span<const YoloLabel> labels) {
  std::string out;
  char line[160];
  for (const YoloLabel& label : labels) {
    const int n = std::snprintf(line, sizeof line, "%d %.6f %.6f %.6f %.6f\n",
                                label.class_id, label.box.cx, label.box.cy,
                                label.box.w, label.box.h);
    out.append(line, static_cast<std::size_t>(n));
  }
  return out;
}

namespace {

constexpr double kNormalizedLow = -0.01;
constexpr double kNormalizedHigh = 1.01;

NormalizedBox parse_normalized_fields(std::span<const std::string_view> fields,
                                      std::size_t line_no) {
  double v[4];
  for (std::size_t i = 0; i < 4; ++i) {
    const auto value = parse_double(fields[i]);
    if (!value || !std::isfinite(*value)) {
      throw ParseError("'" + std::string(fields[i]) + "' is not a number", line_no);
    }
    if (*value < kNormalizedLow || *value > kNormalizedHigh) {
      throw ValidationError("line " + std::to_string(line_no) + ": value " +
                            std::string(fields[i]) + " outside the normalized range");
    }
    v[i] = *value;
  }
  try {
    return make_normalized(v[0], v[1], v[2], v[3]);
  } catch (const ValidationError& e) {
    throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
  }
}

}  // namespace

std::vector<YoloLabel> read_yolo_label_file(std::string_view text) {
  std::vector<YoloLabel> out;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 5) {
      throw ParseError("expected 5 fields, found " + std::to_string(fields.size()), line_no);
    }
    const auto class_id = parse_int(fields[0]);
    if (!class_id || *class_id < 0) {
      throw ParseError("class id must be a non-negative integer, got '" +
                           std::string(fields[0]) + "'",
                       line_no);
    }
    out.push_back({*class_id, parse_normalized_fields(std::span(fields).subspan(1), line_no)});
  }
  return out;
}

std::string write_ignore_region_file(std::span<const NormalizedBox> regions) {
  std::string out;
  char line[128];
  for (const NormalizedBox& box : regions) {
    const int n = std::snprintf(line, sizeof line, "%.6f %.6f %.6f %.6f\n", box.cx,
                                box.cy, box.w, box.h);
    out.append(line, static_cast<std::size_t>(n));
  }
  return out;
}

std::vector<NormalizedBox> read_ignore_region_file(std::string_view text) {
  std::vector<NormalizedBox> out;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 4) {
      throw ParseError("expected 4 fields, found " + std::to_string(fields.size()), line_no);
    }
    out.push_back(parse_normalized_fields(fields, line_no));
  }
  return out;
}

}  // namespace vrukit

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

#include "vrukit/detection_io.hpp"

#include <cmath>
#include <cstdio>
#include <system_error>

#include <nlohmann/json.hpp>

#include "vrukit/error.hpp"
#include "vrukit/ingest.hpp"
#include "vrukit/text.hpp"

namespace vrukit {

namespace fs = std::filesystem;

std::string write_detection_file(std::span<const Detection> detections) {
  std::string out;
  char line[192];
  for (const Detection& d : detections) {
    const int n = std::snprintf(line, sizeof line, "%d %.6f %.6f %.6f %.6f %.6f\n", d.class_id,
                                d.confidence, (d.box.x_min + d.box.x_max) / 2.0,
                                (d.box.y_min + d.box.y_max) / 2.0, d.box.width(),
                                d.box.height());
    out.append(line, static_cast<std::size_t>(n));
  }
  return out;
}

std::vector<Detection> read_detection_file(std::string_view text, Modality modality) {
  std::vector<Detection> out;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 6) {
      throw ParseError("expected 6 fields, found " + std::to_string(fields.size()), line_no);
    }
    const auto class_id = parse_int(fields[0]);
    if (!class_id || *class_id < 0) {
      throw ParseError("class id must be a non-negative integer", line_no);
    }
    const auto confidence = parse_double(fields[1]);
    if (!confidence) throw ParseError("confidence is not a number", line_no);
    if (!(*confidence >= 0.0 && *confidence <= 1.0)) {
      throw ValidationError("line " + std::to_string(line_no) + ": confidence " +
                            std::string(fields[1]) + " outside [0, 1]");
    }
    // Reuse the label reader for the box fields and their range checks.
    std::string label_line = "0";
    for (std::size_t i = 2; i < 6; ++i) {
      label_line += ' ';
      label_line += fields[i];
    }
    NormalizedBox nbox;
    try {
      nbox = read_yolo_label_file(label_line).front().box;
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back({*class_id, from_normalized(nbox, 1.0, 1.0), *confidence, modality});
  }
  return out;
}

DetectionsByFrame read_detection_dir(const fs::path& dir, Modality modality) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("'" + dir.string() + "' is not a directory");
  DetectionsByFrame frames;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    const std::string frame_id = entry.path().stem().string();
    try {
      frames[frame_id] = read_detection_file(read_text_file(entry.path()), modality);
    } catch (const ValidationError& e) {
      throw ValidationError(entry.path().string() + ": " + e.what());
    }
  }
  if (ec) throw IoError("cannot list '" + dir.string() + "': " + ec.message());
  return frames;
}

void write_detection_dir(const fs::path& dir, const DetectionsByFrame& frames) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  for (const auto& [frame_id, detections] : frames) {
    write_text_file(dir / (frame_id + ".txt"), write_detection_file(detections));
  }
}

DetectionsByFrame parse_detection_json(std::string_view text, Modality modality) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed detection JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("frames") || !doc["frames"].is_array()) {
    throw ParseError("detection JSON needs a 'frames' array");
  }
  DetectionsByFrame frames;
  for (const nlohmann::json& frame : doc["frames"]) {
    try {
      const std::string frame_id = frame.at("frame_id").get<std::string>();
      const double width = frame.at("image_width").get<double>();
      const double height = frame.at("image_height").get<double>();
      if (!(width > 0.0) || !(height > 0.0)) {
        throw ValidationError("frame '" + frame_id + "': image dimensions must be positive");
      }
      if (frames.count(frame_id) != 0) {
        throw ValidationError("duplicate frame '" + frame_id + "' in detection JSON");
      }
      std::vector<Detection>& out = frames[frame_id];
      for (const nlohmann::json& det : frame.at("detections")) {
        const int class_id = det.at("class_id").get<int>();
        const double confidence = det.at("confidence").get<double>();
        const auto& box = det.at("box");
        if (!box.is_array() || box.size() != 4) {
          throw ParseError("frame '" + frame_id + "': box must be [x1, y1, x2, y2]");
        }
        if (class_id < 0) throw ValidationError("frame '" + frame_id + "': negative class id");
        if (!(confidence >= 0.0 && confidence <= 1.0)) {
          throw ValidationError("frame '" + frame_id + "': confidence outside [0, 1]");
        }
        BoundingBox b{box[0].get<double>() / width, box[1].get<double>() / height,
                      box[2].get<double>() / width, box[3].get<double>() / height};
        if (!b.valid()) throw ValidationError("frame '" + frame_id + "': invalid box");
        out.push_back({class_id, b, confidence, modality});
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed detection JSON: ") + e.what());
    }
  }
  return frames;
}

DetectionsByFrame load_detections(const fs::path& path, Modality modality) {
  std::error_code ec;
  if (fs::is_directory(path, ec)) return read_detection_dir(path, modality);
  if (!fs::exists(path, ec)) throw IoError("'" + path.string() + "' does not exist");
  return parse_detection_json(read_text_file(path), modality);
}

}  // namespace vrukit

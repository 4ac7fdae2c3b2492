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

#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vrukit/geometry.hpp"
#include "vrukit/label_map.hpp"

namespace vrukit {

using DetectionsByFrame = std::map<std::string, std::vector<Detection>>;
using AnnotationsByFrame = std::map<std::string, std::vector<Annotation>>;

// Detection text files hold one frame each, one detection per line:
//   class_id confidence cx cy w h
// with normalized box fields and six decimals. Boxes are returned in the
// unit frame (image width = height = 1), where IoU equals the pixel IoU.

std::string write_detection_file(std::span<const Detection> detections);

/// Throws ParseError on malformed lines and ValidationError on confidences
/// outside [0, 1] or boxes outside the normalized range.
std::vector<Detection> read_detection_file(std::string_view text,
                                           Modality modality = Modality::kRgb);

/// Reads every *.txt under `dir` (non-recursive), keyed by file stem.
DetectionsByFrame read_detection_dir(const std::filesystem::path& dir, Modality modality);

/// Writes one file per frame, including frames with no detections.
void write_detection_dir(const std::filesystem::path& dir, const DetectionsByFrame& frames);

/// JSON alternative with absolute boxes:
///   {"frames": [{"frame_id": "...", "image_width": W, "image_height": H,
///                "detections": [{"class_id": 0, "confidence": 0.9,
///                                "box": [x1, y1, x2, y2]}]}]}
/// Boxes are rescaled into the unit frame.
DetectionsByFrame parse_detection_json(std::string_view text, Modality modality);

/// Reads a directory of text files or a single JSON file.
DetectionsByFrame load_detections(const std::filesystem::path& path, Modality modality);

}  // namespace vrukit

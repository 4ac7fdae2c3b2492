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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vrukit/geometry.hpp"

namespace vrukit {

enum class SourceDataset { kKitti, kBdd100k, kFlir, kYolo };

std::string_view to_string(SourceDataset dataset);
SourceDataset parse_source_dataset(std::string_view text);

/// Optional KITTI per-object metadata. Retained but unused downstream.
struct KittiMetadata {
  double truncated = 0.0;
  int occluded = 0;
  double alpha = 0.0;
};

/// One ground-truth object as read from a source file, before class mapping.
struct SourceAnnotation {
  SourceDataset source_dataset = SourceDataset::kKitti;
  std::string source_class;  // verbatim from the file
  BoundingBox box;
  std::string frame_id;
  Modality modality = Modality::kRgb;
  std::optional<KittiMetadata> kitti;
};

/// A record the parser read but did not turn into an annotation.
struct SkippedRecord {
  std::string frame_id;
  std::string source_class;
  std::string reason;
};

struct SourceFrame {
  std::string frame_id;
  std::vector<SourceAnnotation> annotations;
  // Known only for formats that carry it (COCO).
  std::optional<int> image_width;
  std::optional<int> image_height;
};

struct ParsedFrames {
  std::vector<SourceFrame> frames;
  std::vector<SkippedRecord> skipped;
  std::size_t record_count = 0;  // label records seen, including skipped ones
};

// KITTI object label: 15 or more whitespace-separated fields per line.
std::vector<SourceAnnotation> parse_kitti_label_file(
    std::string_view text, std::string_view frame_id = {},
    Modality modality = Modality::kRgb);

// BDD100K detection labels: array of {"name", "labels": [{"category",
// "box2d": {x1,y1,x2,y2}}]}. Labels without box2d are skipped.
ParsedFrames parse_bdd100k_json(std::string_view text,
                                Modality modality = Modality::kRgb);

// COCO-style annotations as shipped with FLIR: images / annotations /
// categories with bbox = [x, y, width, height].
ParsedFrames parse_coco_json(std::string_view text,
                             Modality modality = Modality::kThermal,
                             SourceDataset dataset = SourceDataset::kFlir);

struct YoloLabel {
  int class_id = 0;
  NormalizedBox box;

  friend bool operator==(const YoloLabel&, const YoloLabel&) = default;
};

/// "class cx cy w h" lines, six decimals, newline-terminated.
std::string write_yolo_label_file(std::span<const YoloLabel> labels);
std::vector<YoloLabel> read_yolo_label_file(std::string_view text);

/// Ignore regions ("don't care") use the same layout without the class
/// column: "cx cy w h".
std::string write_ignore_region_file(std::span<const NormalizedBox> regions);
std::vector<NormalizedBox> read_ignore_region_file(std::string_view text);

/// File stem without directories or extension: "a/b/c.tar.png" -> "c.tar".
std::string frame_id_from_path(std::string_view path);

}  // namespace vrukit

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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrukit/ingest.hpp"
#include "vrukit/label_map.hpp"
#include "vrukit/scan.hpp"
#include "vrukit/stats.hpp"

namespace vrukit {

struct ConvertOptions {
  std::filesystem::path source_root;
  SourceDataset format = SourceDataset::kKitti;
  // Relative to source_root unless absolute. Defaults depend on the format:
  // kitti image_2/label_2, bdd100k images/labels, flir images/annotations,
  // yolo images/labels. A missing default falls back to source_root.
  std::optional<std::filesystem::path> image_dir;
  std::optional<std::filesystem::path> label_dir;
  Modality modality = Modality::kRgb;
  Split split = Split::kTrain;
  LabelMap label_map = default_label_map();
  ClassFilter filter = ClassFilter::full(default_class_names());
  std::filesystem::path destination;
};

/// Per source class: input == written + ignored + dropped + filtered.
struct ConvertTally {
  std::string source_class;  // case-folded
  std::size_t input = 0;
  std::size_t written = 0;
  std::size_t ignored = 0;
  std::size_t dropped = 0;   // label map said Drop
  std::size_t filtered = 0;  // mapped to a class outside the filter
};

struct ConvertReport {
  SourceDataset format = SourceDataset::kKitti;
  Modality modality = Modality::kRgb;
  Split split = Split::kTrain;
  std::size_t images = 0;
  std::size_t label_files = 0;
  std::size_t ignore_files = 0;
  std::size_t records = 0;  // label records read, including skipped ones
  std::vector<SkippedRecord> skipped;
  std::vector<ConvertTally> tallies;  // sorted by source class
  ClassHistogram instances;           // written labels per output class
  std::size_t errors = 0;
};

/// Converts one source split into a dataset tree (see dataset_tree.hpp),
/// merging into `destination` when it already holds a tree with the same
/// modality and classes. Work is staged and moved into place only after
/// every frame converted, so a failure leaves the destination untouched.
///
/// Throws ValidationError (unmapped class, stem collision, bad box),
/// ParseError, ConfigError (incompatible destination), or IoError.
ConvertReport convert_dataset(const ConvertOptions& options);

/// Label map for YOLO sources: identity on the default class names.
LabelMap yolo_source_map(LabelMap base);

nlohmann::ordered_json to_json(const ConvertReport& report);
std::string convert_report_to_text(const ConvertReport& report);

}  // namespace vrukit

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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrukit/detection_io.hpp"
#include "vrukit/geometry.hpp"
#include "vrukit/scan.hpp"
#include "vrukit/stats.hpp"

namespace vrukit {

// Converted dataset tree:
//
//   <root>/classes.txt                  dense class names, one per line
//   <root>/dataset.json                 modality, classes, conversion sources
//   <root>/images/<split>/<stem>.<ext>
//   <root>/labels/<split>/<stem>.txt    "class cx cy w h"
//   <root>/ignore/<split>/<stem>.txt    "cx cy w h" don't-care regions
//
// A label file exists for a frame iff its source listed at least one box.

struct TreeInfo {
  Modality modality = Modality::kRgb;
  std::vector<std::string> class_names;
  nlohmann::ordered_json sources = nlohmann::ordered_json::array();
  nlohmann::ordered_json augmentation;  // null unless the tree was augmented
};

/// Throws IoError when the tree metadata is missing and ValidationError
/// when dataset.json and classes.txt disagree.
TreeInfo read_tree_info(const std::filesystem::path& root);
void write_tree_info(const std::filesystem::path& root, const TreeInfo& info);

bool is_dataset_tree(const std::filesystem::path& root);

/// Splits with an images/<split> directory, in train, val, test order.
std::vector<Split> tree_splits(const std::filesystem::path& root);

std::vector<std::string> read_class_names_file(const std::filesystem::path& path);

/// Ground truth in the unit frame. Every label file yields a frame; so does
/// every image when `images_dir` is given, so object-free images count as
/// empty frames. Ignore regions get class id -1.
AnnotationsByFrame load_ground_truth(const std::filesystem::path& labels_dir,
                                     const std::optional<std::filesystem::path>& ignore_dir,
                                     const std::optional<std::filesystem::path>& images_dir,
                                     Modality modality = Modality::kRgb);

AnnotationsByFrame load_tree_split(const std::filesystem::path& root, Split split);

/// Index of images/<split> against labels/<split>.
DatasetIndex scan_tree_split(const std::filesystem::path& root, Split split, Modality modality);

/// Instance histogram of one split, ignore regions counted as don't-care.
ClassHistogram tree_histogram(const std::filesystem::path& root, Split split);

}  // namespace vrukit

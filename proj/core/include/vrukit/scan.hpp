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
#include <string_view>
#include <vector>

#include "vrukit/geometry.hpp"

namespace vrukit {

enum class Split { kTrain, kVal, kTest };

std::string_view to_string(Split split);
Split parse_split(std::string_view text);

/// How label files are discovered during a scan.
enum class LabelLayout {
  kPerFrameText,  // one .txt per image, paired by stem (KITTI, YOLO)
  kJsonManifest,  // *.json files listing frames (BDD100K, COCO)
};

LabelLayout parse_label_layout(std::string_view format);

struct FrameEntry {
  std::string frame_id;
  std::filesystem::path image_path;
  std::optional<std::filesystem::path> label_path;
  Modality modality = Modality::kRgb;
};

struct DatasetIndex {
  std::size_t image_count = 0;
  std::size_t label_file_count = 0;  // labels paired with an image
  std::vector<FrameEntry> frames;    // sorted by frame_id
  Split split = Split::kTrain;
  Modality modality = Modality::kRgb;
};

bool is_image_path(const std::filesystem::path& path);

/// Recursively discovers images under `image_root` and pairs each with a
/// label by stem from `label_root`. Images are never decoded.
///
/// With kJsonManifest, a frame counts as labelled when a manifest under
/// `label_root` lists at least one box for it; the label path is the
/// manifest file.
///
/// Throws IoError when a root cannot be read and ValidationError on
/// duplicate image or label stems.
DatasetIndex scan_dataset(const std::filesystem::path& image_root,
                          const std::filesystem::path& label_root,
                          LabelLayout layout, Modality modality,
                          Split split = Split::kTrain);

inline DatasetIndex scan_dataset(const std::filesystem::path& root,
                                 LabelLayout layout, Modality modality,
                                 Split split = Split::kTrain) {
  return scan_dataset(root, root, layout, modality, split);
}

}  // namespace vrukit

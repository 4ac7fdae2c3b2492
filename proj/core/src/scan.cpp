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

#include "vrukit/scan.hpp"

#include <algorithm>
#include <map>
#include <system_error>

#include <nlohmann/json.hpp>

#include "vrukit/error.hpp"
#include "vrukit/ingest.hpp"
#include "vrukit/text.hpp"

namespace vrukit {

namespace fs = std::filesystem;

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kVal:
      return "val";
    case Split::kTest:
      return "test";
  }
  return "unknown";
}

Split parse_split(std::string_view text) {
  const std::string folded = fold_case(trim(text));
  if (folded == "train") return Split::kTrain;
  if (folded == "val" || folded == "valid" || folded == "validation") return Split::kVal;
  if (folded == "test") return Split::kTest;
  throw ConfigError("unknown split '" + std::string(text) + "'");
}

LabelLayout parse_label_layout(std::string_view format) {
  const std::string folded = fold_case(trim(format));
  if (folded == "kitti" || folded == "yolo") return LabelLayout::kPerFrameText;
  if (folded == "bdd100k" || folded == "bdd" || folded == "coco" || folded == "flir") {
    return LabelLayout::kJsonManifest;
  }
  throw ConfigError("unknown dataset format '" + std::string(format) + "'");
}

bool is_image_path(const fs::path& path) {
  const std::string ext = fold_case(path.extension().string());
  return ext == ".jpg" || ext == ".jpeg" || ext == ".png";
}

namespace {

std::vector<fs::path> list_files(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw IoError("'" + root.string() + "' is not a readable directory");
  }
  std::vector<fs::path> files;
  fs::recursive_directory_iterator it(root, fs::directory_options::none, ec);
  if (ec) throw IoError("cannot read directory '" + root.string() + "': " + ec.message());
  for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) throw IoError("cannot read directory under '" + root.string() + "': " + ec.message());
    if (it->is_regular_file(ec)) files.push_back(it->path());
  }
  if (ec) throw IoError("cannot read directory under '" + root.string() + "': " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

void insert_unique(std::map<std::string, fs::path>& by_stem, const fs::path& path,
                   const char* what) {
  const std::string stem = path.stem().string();
  const auto [it, inserted] = by_stem.emplace(stem, path);
  if (!inserted) {
    throw ValidationError(std::string("ambiguous ") + what + " stem '" + stem + "': '" +
                          it->second.string() + "' and '" + path.string() + "'");
  }
}

std::map<std::string, fs::path> labelled_frames_from_manifests(const fs::path& root) {
  std::map<std::string, fs::path> labelled;
  for (const fs::path& file : list_files(root)) {
    if (fold_case(file.extension().string()) != ".json") continue;
    const std::string text = read_text_file(file);
    // Arrays are BDD100K frame lists, objects are COCO documents.
    const bool is_array = !trim(text).empty() && trim(text).front() == '[';
    const ParsedFrames parsed = is_array ? parse_bdd100k_json(text) : parse_coco_json(text);
    for (const SourceFrame& frame : parsed.frames) {
      if (frame.annotations.empty()) continue;
      const auto [it, inserted] = labelled.emplace(frame.frame_id, file);
      if (!inserted && it->second != file) {
        throw ValidationError("frame '" + frame.frame_id + "' is labelled in both '" +
                              it->second.string() + "' and '" + file.string() + "'");
      }
    }
  }
  return labelled;
}

}  // namespace

DatasetIndex scan_dataset(const fs::path& image_root, const fs::path& label_root,
                          LabelLayout layout, Modality modality, Split split) {
  std::map<std::string, fs::path> images;
  for (const fs::path& file : list_files(image_root)) {
    if (is_image_path(file)) insert_unique(images, file, "image");
  }

  std::map<std::string, fs::path> labels;
  if (layout == LabelLayout::kPerFrameText) {
    for (const fs::path& file : list_files(label_root)) {
      if (fold_case(file.extension().string()) == ".txt") insert_unique(labels, file, "label");
    }
  } else {
    labels = labelled_frames_from_manifests(label_root);
  }

  DatasetIndex index;
  index.split = split;
  index.modality = modality;
  index.image_count = images.size();
  index.frames.reserve(images.size());
  for (const auto& [stem, image_path] : images) {
    FrameEntry entry{stem, image_path, std::nullopt, modality};
    if (const auto it = labels.find(stem); it != labels.end()) {
      entry.label_path = it->second;
      ++index.label_file_count;
    }
    index.frames.push_back(std::move(entry));
  }
  return index;
}

}  // namespace vrukit

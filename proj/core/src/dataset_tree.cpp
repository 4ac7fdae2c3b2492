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

#include "vrukit/dataset_tree.hpp"

#include <algorithm>
#include <system_error>

#include "vrukit/error.hpp"
#include "vrukit/ingest.hpp"
#include "vrukit/text.hpp"

namespace vrukit {

namespace fs = std::filesystem;

std::vector<std::string> read_class_names_file(const fs::path& path) {
  std::vector<std::string> names;
  const std::string text = read_text_file(path);
  for (std::string_view line : split_lines(text)) {
    const std::string_view name = trim(line);
    if (!name.empty()) names.emplace_back(name);
  }
  if (names.empty()) throw ValidationError("'" + path.string() + "' lists no classes");
  return names;
}

bool is_dataset_tree(const fs::path& root) {
  std::error_code ec;
  return fs::is_regular_file(root / "classes.txt", ec) &&
         fs::is_regular_file(root / "dataset.json", ec);
}

TreeInfo read_tree_info(const fs::path& root) {
  const std::string text = read_text_file(root / "dataset.json");
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("dataset.json: " + std::string(e.what()));
  }
  TreeInfo info;
  try {
    info.modality = parse_modality(doc.at("modality").get<std::string>());
    info.class_names = doc.at("classes").get<std::vector<std::string>>();
    if (doc.contains("sources")) info.sources = doc["sources"];
    if (doc.contains("augmentation")) info.augmentation = doc["augmentation"];
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("dataset.json: " + std::string(e.what()));
  }
  if (read_class_names_file(root / "classes.txt") != info.class_names) {
    throw ValidationError("classes.txt and dataset.json disagree under '" + root.string() + "'");
  }
  return info;
}

void write_tree_info(const fs::path& root, const TreeInfo& info) {
  std::string classes;
  for (const std::string& name : info.class_names) classes += name + "\n";
  write_text_file(root / "classes.txt", classes);
  nlohmann::ordered_json doc = {{"modality", std::string(to_string(info.modality))},
                                {"classes", info.class_names},
                                {"sources", info.sources}};
  if (!info.augmentation.is_null()) doc["augmentation"] = info.augmentation;
  write_text_file(root / "dataset.json", doc.dump(2) + "\n");
}

std::vector<Split> tree_splits(const fs::path& root) {
  std::vector<Split> out;
  std::error_code ec;
  for (Split s : {Split::kTrain, Split::kVal, Split::kTest}) {
    if (fs::is_directory(root / "images" / to_string(s), ec)) out.push_back(s);
  }
  return out;
}

namespace {

std::vector<fs::path> files_with_extension(const fs::path& dir, bool images) {
  std::vector<fs::path> out;
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) throw IoError("cannot read directory '" + dir.string() + "': " + ec.message());
  for (const fs::directory_iterator end; it != end; it.increment(ec)) {
    if (ec) throw IoError("cannot read directory '" + dir.string() + "': " + ec.message());
    if (!it->is_regular_file(ec)) continue;
    const fs::path& p = it->path();
    if (images ? is_image_path(p) : fold_case(p.extension().string()) == ".txt") {
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Annotation unit_annotation(int class_id, const NormalizedBox& box, const std::string& frame,
                           Modality modality) {
  Annotation a;
  a.class_id = class_id;
  a.box = from_normalized(box, 1.0, 1.0);
  a.ignore = class_id == kIgnoreClassId;
  a.source_dataset = SourceDataset::kYolo;
  a.frame_id = frame;
  a.modality = modality;
  return a;
}

template <typename Fn>
void with_context(const fs::path& file, Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    throw ParseError(file.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(file.string() + ": " + e.what());
  }
}

}  // namespace

AnnotationsByFrame load_ground_truth(const fs::path& labels_dir,
                                     const std::optional<fs::path>& ignore_dir,
                                     const std::optional<fs::path>& images_dir,
                                     Modality modality) {
  AnnotationsByFrame out;
  std::error_code ec;
  if (images_dir && fs::is_directory(*images_dir, ec)) {
    for (const fs::path& p : files_with_extension(*images_dir, true)) {
      out[p.stem().string()];
    }
  }
  if (fs::is_directory(labels_dir, ec)) {
    for (const fs::path& p : files_with_extension(labels_dir, false)) {
      const std::string frame = p.stem().string();
      auto& annos = out[frame];
      with_context(p, [&] {
        for (const YoloLabel& l : read_yolo_label_file(read_text_file(p))) {
          annos.push_back(unit_annotation(l.class_id, l.box, frame, modality));
        }
      });
    }
  } else {
    throw IoError("'" + labels_dir.string() + "' is not a readable directory");
  }
  if (ignore_dir && fs::is_directory(*ignore_dir, ec)) {
    for (const fs::path& p : files_with_extension(*ignore_dir, false)) {
      const std::string frame = p.stem().string();
      auto& annos = out[frame];
      with_context(p, [&] {
        for (const NormalizedBox& b : read_ignore_region_file(read_text_file(p))) {
          annos.push_back(unit_annotation(kIgnoreClassId, b, frame, modality));
        }
      });
    }
  }
  return out;
}

AnnotationsByFrame load_tree_split(const fs::path& root, Split split) {
  const TreeInfo info = read_tree_info(root);
  const std::string s(to_string(split));
  const fs::path labels = root / "labels" / s;
  std::error_code ec;
  if (!fs::is_directory(root / "images" / s, ec)) {
    throw IoError("dataset tree '" + root.string() + "' has no '" + s + "' split");
  }
  AnnotationsByFrame gt;
  if (fs::is_directory(labels, ec)) {
    gt = load_ground_truth(labels, root / "ignore" / s, root / "images" / s, info.modality);
  } else {
    for (const fs::path& p : files_with_extension(root / "images" / s, true)) {
      gt[p.stem().string()];
    }
  }
  const int k = static_cast<int>(info.class_names.size());
  for (const auto& [frame, annos] : gt) {
    for (const Annotation& a : annos) {
      if (!a.ignore && a.class_id >= k) {
        throw ValidationError("frame '" + frame + "' uses class id " +
                              std::to_string(a.class_id) + " but the tree has " +
                              std::to_string(k) + " classes");
      }
    }
  }
  return gt;
}

DatasetIndex scan_tree_split(const fs::path& root, Split split, Modality modality) {
  const std::string s(to_string(split));
  std::error_code ec;
  const fs::path labels = root / "labels" / s;
  if (!fs::is_directory(labels, ec)) {
    DatasetIndex index = scan_dataset(root / "images" / s, root / "images" / s,
                                      LabelLayout::kPerFrameText, modality, split);
    for (FrameEntry& f : index.frames) f.label_path.reset();
    index.label_file_count = 0;
    return index;
  }
  return scan_dataset(root / "images" / s, labels, LabelLayout::kPerFrameText, modality, split);
}

ClassHistogram tree_histogram(const fs::path& root, Split split) {
  const TreeInfo info = read_tree_info(root);
  std::vector<Annotation> all;
  for (auto& [frame, annos] : load_tree_split(root, split)) {
    all.insert(all.end(), annos.begin(), annos.end());
  }
  return count_instances(all, info.class_names, split, info.modality);
}

}  // namespace vrukit

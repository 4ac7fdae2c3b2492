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

#include "vrukit/convert.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <system_error>

#include "vrukit/dataset_tree.hpp"
#include "vrukit/error.hpp"
#include "vrukit/image.hpp"
#include "vrukit/text.hpp"

namespace vrukit {

namespace fs = std::filesystem;

namespace {

constexpr const char* kStagingName = ".vrukit-staging";

struct SourceDirs {
  fs::path images;
  fs::path labels;
};

fs::path resolve(const fs::path& root, const std::optional<fs::path>& given,
                 const char* fallback) {
  if (given) return given->is_absolute() ? *given : root / *given;
  std::error_code ec;
  const fs::path candidate = root / fallback;
  return fs::is_directory(candidate, ec) ? candidate : root;
}

SourceDirs source_dirs(const ConvertOptions& o) {
  switch (o.format) {
    case SourceDataset::kKitti:
      return {resolve(o.source_root, o.image_dir, "image_2"),
              resolve(o.source_root, o.label_dir, "label_2")};
    case SourceDataset::kFlir:
      return {resolve(o.source_root, o.image_dir, "images"),
              resolve(o.source_root, o.label_dir, "annotations")};
    case SourceDataset::kBdd100k:
    case SourceDataset::kYolo:
      break;
  }
  return {resolve(o.source_root, o.image_dir, "images"),
          resolve(o.source_root, o.label_dir, "labels")};
}

std::vector<fs::path> files_under(const fs::path& root, std::string_view ext) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw IoError("'" + root.string() + "' is not a readable directory");
  }
  fs::recursive_directory_iterator it(root, ec);
  for (const fs::recursive_directory_iterator end; !ec && it != end; it.increment(ec)) {
    if (it->path().filename() == kStagingName) {
      it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file(ec) && fold_case(it->path().extension().string()) == ext) {
      out.push_back(it->path());
    }
  }
  if (ec) throw IoError("cannot read directory '" + root.string() + "': " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

template <typename Fn>
auto in_file(const fs::path& file, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(file.filename().string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(file.filename().string() + ": " + e.what());
  }
}

// Source frames keyed by frame id, merged across label files.
struct SourceLabels {
  std::map<std::string, SourceFrame> frames;
  std::vector<SkippedRecord> skipped;
  std::size_t records = 0;
};

void merge_frame(SourceLabels& labels, SourceFrame frame, const fs::path& file) {
  const auto [it, inserted] = labels.frames.emplace(frame.frame_id, std::move(frame));
  if (!inserted) {
    throw ValidationError("frame '" + it->first + "' is labelled more than once (again in '" +
                          file.filename().string() + "')");
  }
}

void merge_parsed(SourceLabels& labels, ParsedFrames parsed, const fs::path& file) {
  labels.records += parsed.record_count;
  labels.skipped.insert(labels.skipped.end(), parsed.skipped.begin(), parsed.skipped.end());
  for (SourceFrame& f : parsed.frames) merge_frame(labels, std::move(f), file);
}

std::vector<std::string> yolo_class_names(const ConvertOptions& o, const fs::path& label_root) {
  std::error_code ec;
  for (const fs::path& candidate : {o.source_root / "classes.txt", label_root / "classes.txt",
                                    label_root.parent_path() / "classes.txt"}) {
    if (fs::is_regular_file(candidate, ec)) return read_class_names_file(candidate);
  }
  throw IoError("YOLO source '" + o.source_root.string() + "' has no classes.txt");
}

SourceLabels read_source_labels(const ConvertOptions& o, const SourceDirs& dirs,
                                const std::map<std::string, fs::path>& images) {
  SourceLabels labels;
  switch (o.format) {
    case SourceDataset::kKitti:
      for (const fs::path& file : files_under(dirs.labels, ".txt")) {
        SourceFrame frame;
        frame.frame_id = file.stem().string();
        frame.annotations = in_file(file, [&] {
          return parse_kitti_label_file(read_text_file(file), frame.frame_id, o.modality);
        });
        labels.records += frame.annotations.size();
        merge_frame(labels, std::move(frame), file);
      }
      break;
    case SourceDataset::kBdd100k:
      for (const fs::path& file : files_under(dirs.labels, ".json")) {
        merge_parsed(labels,
                     in_file(file, [&] { return parse_bdd100k_json(read_text_file(file), o.modality); }),
                     file);
      }
      break;
    case SourceDataset::kFlir:
      for (const fs::path& file : files_under(dirs.labels, ".json")) {
        merge_parsed(labels, in_file(file, [&] {
                       return parse_coco_json(read_text_file(file), o.modality, o.format);
                     }),
                     file);
      }
      break;
    case SourceDataset::kYolo: {
      const std::vector<std::string> names = yolo_class_names(o, dirs.labels);
      for (const fs::path& file : files_under(dirs.labels, ".txt")) {
        if (file.filename() == "classes.txt") continue;
        SourceFrame frame;
        frame.frame_id = file.stem().string();
        const auto image = images.find(frame.frame_id);
        const auto yolo = in_file(file, [&] { return read_yolo_label_file(read_text_file(file)); });
        labels.records += yolo.size();
        if (image == images.end()) {
          for (const YoloLabel& l : yolo) {
            labels.skipped.push_back({frame.frame_id, std::to_string(l.class_id), "no image"});
          }
          continue;
        }
        const auto size = probe_image_size(image->second);
        if (!size) throw ValidationError("'" + image->second.string() + "' is not a PNG or JPEG");
        for (const YoloLabel& l : yolo) {
          if (l.class_id >= static_cast<int>(names.size())) {
            throw ValidationError(file.filename().string() + ": class id " +
                                  std::to_string(l.class_id) + " has no entry in classes.txt");
          }
          SourceAnnotation a;
          a.source_dataset = SourceDataset::kYolo;
          a.source_class = names[static_cast<std::size_t>(l.class_id)];
          a.box = from_normalized(l.box, size->width, size->height);
          a.frame_id = frame.frame_id;
          a.modality = o.modality;
          frame.annotations.push_back(std::move(a));
        }
        frame.image_width = size->width;
        frame.image_height = size->height;
        merge_frame(labels, std::move(frame), file);
      }
      break;
    }
  }
  return labels;
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
}

class Staging {
 public:
  explicit Staging(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::remove_all(dir_, ec);
    make_dirs(dir_);
  }
  ~Staging() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  Staging(const Staging&) = delete;
  Staging& operator=(const Staging&) = delete;

  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
};

std::set<std::string> existing_stems(const fs::path& dir) {
  std::set<std::string> stems;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return stems;
  for (const auto& entry : fs::directory_iterator(dir)) stems.insert(entry.path().stem().string());
  return stems;
}

void move_tree(const fs::path& from, const fs::path& to) {
  std::error_code ec;
  if (!fs::is_directory(from, ec)) return;
  make_dirs(to);
  for (const auto& entry : fs::directory_iterator(from)) {
    const fs::path target = to / entry.path().filename();
    fs::rename(entry.path(), target, ec);
    if (ec) throw IoError("cannot move into '" + target.string() + "': " + ec.message());
  }
}

}  // namespace

LabelMap yolo_source_map(LabelMap base) {
  const std::vector<std::string> names = base.class_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!base.lookup(SourceDataset::kYolo, names[i])) {
      base.set(SourceDataset::kYolo, names[i], MapTarget::to_class(static_cast<int>(i)));
    }
  }
  return base;
}

ConvertReport convert_dataset(const ConvertOptions& o) {
  const std::vector<std::string>& all_classes = o.label_map.class_names();
  // Validates the filter before any I/O.
  const std::vector<std::string> out_classes =
      apply_class_filter({}, o.filter, all_classes).class_names;

  std::error_code ec;
  const fs::path& dst = o.destination;
  TreeInfo info;
  info.modality = o.modality;
  info.class_names = out_classes;
  if (is_dataset_tree(dst)) {
    const TreeInfo existing = read_tree_info(dst);
    if (existing.modality != o.modality) {
      throw ConfigError("destination holds " + std::string(to_string(existing.modality)) +
                        " data, cannot add " + std::string(to_string(o.modality)));
    }
    if (existing.class_names != out_classes) {
      throw ConfigError("destination class list differs from this conversion's");
    }
    info = existing;
  } else if (fs::exists(dst, ec) && !fs::is_empty(dst, ec)) {
    throw ConfigError("destination '" + dst.string() + "' is not empty and not a dataset tree");
  }

  const SourceDirs dirs = source_dirs(o);
  std::map<std::string, fs::path> images;
  for (const FrameEntry& f : scan_dataset(dirs.images, dirs.images, LabelLayout::kPerFrameText,
                                          o.modality, o.split).frames) {
    images.emplace(f.frame_id, f.image_path);
  }
  SourceLabels labels = read_source_labels(o, dirs, images);

  ConvertReport report;
  report.format = o.format;
  report.modality = o.modality;
  report.split = o.split;
  report.records = labels.records;
  report.skipped = std::move(labels.skipped);

  std::vector<SourceAnnotation> source;
  std::set<std::string> boxed_frames;
  for (auto& [id, frame] : labels.frames) {
    if (!images.count(id)) {
      for (const SourceAnnotation& a : frame.annotations) {
        report.skipped.push_back({id, a.source_class, "no image"});
      }
      continue;
    }
    if (!frame.annotations.empty()) boxed_frames.insert(id);
    for (SourceAnnotation& a : frame.annotations) source.push_back(std::move(a));
  }

  const MappingResult mapped = apply_label_map(source, o.label_map);
  const FilterResult filtered = apply_class_filter(mapped.annotations, o.filter, all_classes);

  std::map<std::string, ConvertTally> tallies;
  for (const SourceClassTally& t : mapped.tallies) {
    ConvertTally& c = tallies[t.source_class];
    c.source_class = t.source_class;
    c.input = t.input;
    c.ignored = t.ignored;
    c.dropped = t.dropped;
    c.written = t.mapped;
  }
  for (const SourceAnnotation& a : source) {
    const MapTarget target = *o.label_map.lookup(a.source_dataset, a.source_class);
    if (target.kind == MapTarget::Kind::kClass &&
        filtered.remap[static_cast<std::size_t>(target.class_id)] < 0) {
      ConvertTally& c = tallies[fold_case(trim(a.source_class))];
      ++c.filtered;
      --c.written;
    }
  }
  for (auto& [key, t] : tallies) report.tallies.push_back(t);
  report.instances = count_instances(filtered.annotations, out_classes, o.split, o.modality);

  std::map<std::string, std::vector<YoloLabel>> frame_labels;
  std::map<std::string, std::vector<NormalizedBox>> frame_ignores;
  std::map<std::string, ImageSize> sizes;
  for (const auto& [id, frame] : labels.frames) {
    if (frame.image_width && frame.image_height) sizes[id] = {*frame.image_width, *frame.image_height};
  }
  for (const Annotation& a : filtered.annotations) {
    auto size = sizes.find(a.frame_id);
    if (size == sizes.end()) {
      const fs::path& image = images.at(a.frame_id);
      const auto probed = probe_image_size(image);
      if (!probed) throw ValidationError("'" + image.string() + "' is not a PNG or JPEG");
      size = sizes.emplace(a.frame_id, *probed).first;
    }
    NormalizedBox box;
    try {
      box = to_normalized(a.box, size->second.width, size->second.height);
    } catch (const ValidationError& e) {
      throw ValidationError("frame '" + a.frame_id + "': " + e.what());
    }
    if (a.ignore) {
      frame_ignores[a.frame_id].push_back(box);
    } else {
      frame_labels[a.frame_id].push_back({a.class_id, box});
    }
  }

  const std::string split(to_string(o.split));
  for (const char* sub : {"images", "labels", "ignore"}) {
    const std::set<std::string> taken = existing_stems(dst / sub / split);
    for (const auto& [id, path] : images) {
      if (taken.count(id)) {
        throw ValidationError("frame '" + id + "' already exists in the destination " + split +
                              " split");
      }
    }
  }

  make_dirs(dst);
  Staging staging(dst / kStagingName);
  const fs::path stage_images = staging.dir() / "images";
  const fs::path stage_labels = staging.dir() / "labels";
  const fs::path stage_ignore = staging.dir() / "ignore";
  make_dirs(stage_images);
  for (const auto& [id, path] : images) {
    fs::copy_file(path, stage_images / (id + fold_case(path.extension().string())), ec);
    if (ec) throw IoError("cannot copy '" + path.string() + "': " + ec.message());
    ++report.images;
    if (!boxed_frames.count(id)) continue;
    make_dirs(stage_labels);
    const auto l = frame_labels.find(id);
    write_text_file(stage_labels / (id + ".txt"),
                    l == frame_labels.end() ? std::string() : write_yolo_label_file(l->second));
    ++report.label_files;
    if (const auto g = frame_ignores.find(id); g != frame_ignores.end()) {
      make_dirs(stage_ignore);
      write_text_file(stage_ignore / (id + ".txt"), write_ignore_region_file(g->second));
      ++report.ignore_files;
    }
  }

  move_tree(stage_images, dst / "images" / split);
  move_tree(stage_labels, dst / "labels" / split);
  move_tree(stage_ignore, dst / "ignore" / split);
  info.sources.push_back({{"format", std::string(to_string(o.format))},
                          {"split", split},
                          {"images", report.images},
                          {"label_files", report.label_files}});
  write_tree_info(dst, info);
  return report;
}

nlohmann::ordered_json to_json(const ConvertReport& r) {
  std::map<std::pair<std::string, std::string>, std::size_t> skipped;
  for (const SkippedRecord& s : r.skipped) ++skipped[{fold_case(trim(s.source_class)), s.reason}];
  nlohmann::ordered_json skipped_json = nlohmann::ordered_json::array();
  for (const auto& [key, count] : skipped) {
    skipped_json.push_back({{"source_class", key.first}, {"reason", key.second}, {"count", count}});
  }
  nlohmann::ordered_json tallies = nlohmann::ordered_json::array();
  for (const ConvertTally& t : r.tallies) {
    tallies.push_back({{"source_class", t.source_class},
                       {"input", t.input},
                       {"written", t.written},
                       {"ignored", t.ignored},
                       {"dropped", t.dropped},
                       {"filtered", t.filtered}});
  }
  return {{"format", std::string(to_string(r.format))},
          {"modality", std::string(to_string(r.modality))},
          {"split", std::string(to_string(r.split))},
          {"images", r.images},
          {"label_files", r.label_files},
          {"ignore_files", r.ignore_files},
          {"records", r.records},
          {"skipped", r.skipped.size()},
          {"skipped_by_class", std::move(skipped_json)},
          {"source_classes", std::move(tallies)},
          {"instances", to_json(r.instances)},
          {"errors", r.errors}};
}

std::string convert_report_to_text(const ConvertReport& r) {
  std::vector<std::vector<std::string>> cells = {
      {"Source class", "Input", "Written", "Ignored", "Dropped", "Filtered"}};
  for (const ConvertTally& t : r.tallies) {
    cells.push_back({t.source_class, std::to_string(t.input), std::to_string(t.written),
                     std::to_string(t.ignored), std::to_string(t.dropped),
                     std::to_string(t.filtered)});
  }
  std::string out = std::string(to_string(r.format)) + " " + std::string(to_string(r.split)) +
                    ": " + std::to_string(r.images) + " images, " +
                    std::to_string(r.label_files) + " label files, " +
                    std::to_string(r.skipped.size()) + " skipped records\n\n";
  out += render_table(cells);
  out += "\n" + histogram_to_text(r.instances);
  return out;
}

}  // namespace vrukit

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

#include "vrukit/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrukit/detection_io.hpp"
#include "vrukit/error.hpp"
#include "vrukit/image.hpp"
#include "vrukit/ingest.hpp"
#include "vrukit/label_map.hpp"
#include "vrukit/rng.hpp"
#include "vrukit/text.hpp"

namespace vrukit {

namespace fs = std::filesystem;

namespace {

struct Object {
  std::string source_class;
  BoundingBox box;
};

struct Frame {
  std::string id;
  int width = 0;
  int height = 0;
  std::vector<Object> objects;
};

double round_to(double v, double step) { return std::round(v / step) * step; }

BoundingBox random_box(Rng& rng, int width, int height, double step) {
  const double w = round_to(rng.uniform(0.12, 0.35) * width, step);
  const double h = round_to(rng.uniform(0.18, 0.5) * height, step);
  const double x = round_to(rng.uniform(0.0, width - w - 1.0), step);
  const double y = round_to(rng.uniform(0.0, height - h - 1.0), step);
  return {x, y, x + w, y + h};
}

std::string frame_name(std::string_view prefix, int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*s%04d", static_cast<int>(prefix.size()), prefix.data(), index);
  return buf;
}

// Objects per frame cycle 1, 2, 3 so counts are easy to enumerate.
std::vector<Frame> make_frames(Rng& rng, std::string_view prefix, int count, int width,
                               int height, std::span<const std::string_view> classes,
                               double step, std::size_t& cursor) {
  std::vector<Frame> frames;
  for (int i = 0; i < count; ++i) {
    Frame f{frame_name(prefix, i), width, height, {}};
    for (int k = 0; k <= i % 3; ++k) {
      f.objects.push_back({std::string(classes[cursor++ % classes.size()]),
                           random_box(rng, width, height, step)});
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

ImageBuffer render(const Frame& frame, bool thermal, std::uint64_t seed) {
  Rng rng(seed);
  const auto base = static_cast<int>(rng.uniform_int(20, 90));
  ImageBuffer img = ImageBuffer::filled(frame.width, frame.height, 0, 0, 0);
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      std::uint8_t* p = img.pixel(x, y);
      const int g = base + (x * 60) / frame.width + (y * 40) / frame.height;
      if (thermal) {
        p[0] = p[1] = p[2] = static_cast<std::uint8_t>(g / 2);
      } else {
        p[0] = static_cast<std::uint8_t>(g);
        p[1] = static_cast<std::uint8_t>(g + 30);
        p[2] = static_cast<std::uint8_t>(g + 60);
      }
    }
  }
  for (const Object& o : frame.objects) {
    const auto shade = static_cast<std::uint8_t>(rng.uniform_int(150, 250));
    const int x0 = std::max(0, static_cast<int>(o.box.x_min));
    const int y0 = std::max(0, static_cast<int>(o.box.y_min));
    const int x1 = std::min(frame.width, static_cast<int>(std::ceil(o.box.x_max)));
    const int y1 = std::min(frame.height, static_cast<int>(std::ceil(o.box.y_max)));
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) {
        std::uint8_t* p = img.pixel(x, y);
        p[0] = shade;
        p[1] = thermal ? shade : static_cast<std::uint8_t>(255 - shade);
        p[2] = thermal ? shade : static_cast<std::uint8_t>(shade / 2);
      }
    }
  }
  return img;
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
}

std::string kitti_line(const Object& o) {
  const bool dont_care = o.source_class == "DontCare";
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%s %.2f %d %.2f %.2f %.2f %.2f %.2f 1.50 1.60 3.70 -3.00 1.70 20.00 -1.57\n",
                o.source_class.c_str(), dont_care ? -1.0 : 0.0, dont_care ? -1 : 0,
                dont_care ? -10.0 : 0.25, o.box.x_min, o.box.y_min, o.box.x_max, o.box.y_max);
  return buf;
}

void write_kitti(const fs::path& root, const std::vector<Frame>& frames, std::uint64_t seed) {
  make_dirs(root / "image_2");
  make_dirs(root / "label_2");
  for (const Frame& f : frames) {
    write_image(root / "image_2" / (f.id + ".png"), render(f, false, seed ^ fnv1a64(f.id)));
    std::string text;
    for (const Object& o : f.objects) text += kitti_line(o);
    write_text_file(root / "label_2" / (f.id + ".txt"), text);
  }
}

// Each BDD frame also carries one box-less lane label, which the parser skips.
std::size_t write_bdd(const fs::path& root, const std::vector<Frame>& frames,
                      std::uint64_t seed) {
  make_dirs(root / "images");
  make_dirs(root / "labels");
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  std::size_t label_id = 0;
  for (const Frame& f : frames) {
    write_image(root / "images" / (f.id + ".png"), render(f, false, seed ^ fnv1a64(f.id)));
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (const Object& o : f.objects) {
      labels.push_back({{"id", label_id++},
                        {"category", o.source_class},
                        {"attributes", {{"occluded", false}, {"truncated", false}}},
                        {"box2d",
                         {{"x1", o.box.x_min}, {"y1", o.box.y_min},
                          {"x2", o.box.x_max}, {"y2", o.box.y_max}}}});
    }
    labels.push_back({{"id", label_id++},
                      {"category", "lane"},
                      {"poly2d", {{{"vertices", {{0, f.height - 1}, {f.width - 1, f.height / 2}}},
                                   {"types", "LL"},
                                   {"closed", false}}}}});
    doc.push_back({{"name", f.id + ".jpg"},
                   {"attributes", {{"weather", "clear"}, {"timeofday", "daytime"}}},
                   {"timestamp", 10000},
                   {"labels", std::move(labels)}});
  }
  write_text_file(root / "labels" / "det.json", doc.dump(2) + "\n");
  return frames.size();
}

void write_coco(const fs::path& root, const std::vector<Frame>& frames,
                std::span<const std::string_view> category_names, std::uint64_t seed) {
  make_dirs(root / "images");
  make_dirs(root / "annotations");
  nlohmann::ordered_json images = nlohmann::ordered_json::array();
  nlohmann::ordered_json annotations = nlohmann::ordered_json::array();
  nlohmann::ordered_json categories = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < category_names.size(); ++c) {
    categories.push_back({{"id", c + 1}, {"name", category_names[c]}});
  }
  std::size_t anno_id = 1;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Frame& f = frames[i];
    write_image(root / "images" / (f.id + ".png"), render(f, true, seed ^ fnv1a64(f.id)));
    images.push_back({{"id", i + 1},
                      {"file_name", "images/" + f.id + ".png"},
                      {"width", f.width},
                      {"height", f.height}});
    for (const Object& o : f.objects) {
      const auto cat = std::find(category_names.begin(), category_names.end(), o.source_class);
      annotations.push_back({{"id", anno_id++},
                             {"image_id", i + 1},
                             {"category_id", (cat - category_names.begin()) + 1},
                             {"bbox", {o.box.x_min, o.box.y_min, o.box.width(), o.box.height()}},
                             {"area", o.box.area()},
                             {"iscrowd", 0}});
    }
  }
  nlohmann::ordered_json doc = {{"info", {{"description", "vrukit synthetic thermal fixture"}}},
                                {"images", std::move(images)},
                                {"annotations", std::move(annotations)},
                                {"categories", std::move(categories)}};
  write_text_file(root / "annotations" / "coco.json", doc.dump(2) + "\n");
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

// Detector stand-ins: jittered copies of the mappable ground truth, a few
// misses, and a false positive on every other frame.
DetectionsByFrame make_detections(const std::vector<Frame>& frames, Modality modality,
                                  std::uint64_t seed, double miss_rate) {
  const LabelMap map = default_label_map();
  Rng rng(seed);
  DetectionsByFrame out;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Frame& f = frames[i];
    std::vector<Detection>& dets = out[f.id];
    for (const Object& o : f.objects) {
      const auto target = map.lookup(SourceDataset::kFlir, o.source_class);
      if (!target || target->kind != MapTarget::Kind::kClass) continue;
      if (rng.bernoulli(miss_rate)) continue;
      const double jitter = 0.03 * o.box.width();
      const double dx = rng.uniform(-jitter, jitter);
      const double dy = rng.uniform(-jitter, jitter);
      BoundingBox box{clamp_unit((o.box.x_min + dx) / f.width),
                      clamp_unit((o.box.y_min + dy) / f.height),
                      clamp_unit((o.box.x_max + dx) / f.width),
                      clamp_unit((o.box.y_max + dy) / f.height)};
      const double conf = round_to(rng.uniform(0.45, 0.95), 0.01);
      dets.push_back({target->class_id, box, conf, modality});
    }
    if (i % 2 == 1) {
      const double x = round_to(rng.uniform(0.0, 0.7), 0.001);
      const double y = round_to(rng.uniform(0.0, 0.7), 0.001);
      const double conf = round_to(rng.uniform(0.1, 0.5), 0.01);
      dets.push_back({static_cast<int>(rng.uniform_int(0, 2)), {x, y, x + 0.2, y + 0.25}, conf,
                      modality});
    }
  }
  return out;
}

}  // namespace

FixtureSummary write_fixture(const fs::path& root, const FixtureOptions& options) {
  if (options.frames_per_source < 1) throw ConfigError("fixture needs at least one frame");
  for (const char* sub : {"kitti", "bdd100k", "flir", "dets"}) {
    if (fs::exists(root / sub)) {
      throw IoError("'" + (root / sub).string() + "' already exists");
    }
  }
  const int n = options.frames_per_source;
  Rng rng(splitmix64(options.seed));
  FixtureSummary summary;

  static constexpr std::array<std::string_view, 10> kKittiClasses = {
      "Car", "Pedestrian", "Van", "Cyclist", "Person_sitting",
      "Truck", "DontCare", "Tram", "Car", "Misc"};
  static constexpr std::array<std::string_view, 10> kBddClasses = {
      "car", "person", "traffic sign", "rider", "bike",
      "truck", "traffic light", "motor", "bus", "train"};
  static constexpr std::array<std::string_view, 12> kFlirClasses = {
      "person", "car", "bike", "dog", "motor", "sign",
      "scooter", "other vehicle", "stroller", "truck", "light", "bus"};

  std::size_t cursor = 0;
  std::vector<Frame> kitti = make_frames(rng, "kitti_", n, 200, 64, kKittiClasses, 0.01, cursor);
  if (options.inject_unmapped_class) {
    kitti.front().objects.push_back({"Hovercraft", random_box(rng, 200, 64, 0.01)});
  }
  cursor = 0;
  const std::vector<Frame> bdd = make_frames(rng, "bdd_", n, 160, 90, kBddClasses, 0.1, cursor);
  cursor = 0;
  std::vector<Frame> flir = make_frames(rng, "flir_", n, 160, 128, kFlirClasses, 1.0, cursor);
  flir.back().objects.clear();

  write_kitti(root / "kitti", kitti, options.seed);
  const std::size_t lanes = write_bdd(root / "bdd100k", bdd, options.seed);
  write_coco(root / "flir", flir, kFlirClasses, options.seed);

  const DetectionsByFrame thermal =
      make_detections(flir, Modality::kThermal, splitmix64(options.seed ^ 0x7431), 0.1);
  const DetectionsByFrame rgb =
      make_detections(flir, Modality::kRgb, splitmix64(options.seed ^ 0x7267), 0.3);
  write_detection_dir(root / "dets" / "thermal", thermal);
  write_detection_dir(root / "dets" / "rgb", rgb);

  for (const std::vector<Frame>* set : {&std::as_const(kitti), &bdd, &std::as_const(flir)}) {
    for (const Frame& f : *set) {
      ++summary.frames;
      if (f.objects.empty()) ++summary.images_without_objects;
      summary.boxed_records += f.objects.size();
    }
  }
  summary.source_records = summary.boxed_records + lanes;
  for (const auto& [id, dets] : rgb) summary.detections_rgb += dets.size();
  for (const auto& [id, dets] : thermal) summary.detections_thermal += dets.size();
  return summary;
}

}  // namespace vrukit

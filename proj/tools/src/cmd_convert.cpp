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

#include <iostream>
#include <memory>

#include "common.hpp"
#include "vrukit/convert.hpp"
#include "vrukit/error.hpp"
#include "vrukit/text.hpp"

namespace vrukit::cli {

namespace fs = std::filesystem;

namespace {

struct ConvertArgs {
  fs::path src;
  std::string format;
  std::optional<std::string> modality;
  std::string split = "train";
  std::optional<fs::path> images;
  std::optional<fs::path> labels;
  std::optional<fs::path> label_map;
  std::string filter = "full";
  fs::path dst;
  std::optional<fs::path> report;
  bool quiet = false;
};

int run_convert(const ConvertArgs& a) {
  ConvertOptions o;
  o.format = parse_source_dataset(a.format);
  o.modality = a.modality ? parse_modality(*a.modality)
               : o.format == SourceDataset::kFlir ? Modality::kThermal
                                                  : Modality::kRgb;
  o.split = parse_split(a.split);
  require_dir(a.src, "source");
  o.source_root = a.src;
  o.image_dir = a.images;
  o.label_dir = a.labels;
  if (a.label_map) {
    require_file(*a.label_map, "label map");
    o.label_map = apply_label_map_overrides(default_label_map(), read_text_file(*a.label_map));
  }
  if (o.format == SourceDataset::kYolo) o.label_map = yolo_source_map(o.label_map);
  o.filter = parse_class_filter(a.filter, o.label_map.class_names());
  o.destination = a.dst;

  const ConvertReport report = convert_dataset(o);
  const fs::path report_path =
      a.report ? *a.report
               : a.dst / "reports" /
                     ("convert-" + std::string(to_string(o.format)) + "-" +
                      std::string(to_string(o.modality)) + "-" + std::string(to_string(o.split)) +
                      ".json");
  write_json(report_path, to_json(report));
  if (!a.quiet) std::cout << convert_report_to_text(report);
  return 0;
}

}  // namespace

Command add_convert(CLI::App& root) {
  auto args = std::make_shared<ConvertArgs>();
  CLI::App* app = root.add_subcommand(
      "convert", "Convert a KITTI, BDD100K, FLIR (COCO) or YOLO split into a unified YOLO tree");
  app->add_option("--src", args->src, "Source dataset root")->required();
  app->add_option("--format", args->format, "Source format: kitti, bdd100k, flir, coco, yolo")
      ->required();
  app->add_option("--modality", args->modality,
                  "rgb or thermal (default: thermal for flir, rgb otherwise)");
  app->add_option("--split", args->split, "Split to write: train, val, test")
      ->capture_default_str();
  app->add_option("--images", args->images,
                  "Image directory, relative to --src (default depends on the format)");
  app->add_option("--labels", args->labels,
                  "Label directory, relative to --src (default depends on the format)");
  app->add_option("--label-map", args->label_map,
                  "JSON overrides {dataset: {source_class: target}}; target is a class, "
                  "Ignore or Drop; \"*\": \"Drop\" drops unknown classes");
  app->add_option("--filter", args->filter, "Class filter: full, seven, four, custom:A,B,...")
      ->capture_default_str();
  app->add_option("--dst", args->dst, "Destination tree (created or merged into)")->required();
  app->add_option("--report", args->report,
                  "Report JSON path (default: <dst>/reports/convert-<format>-<modality>-<split>.json)");
  app->add_flag("-q,--quiet", args->quiet, "Do not print the report table");
  return {app, [args] { return run_convert(*args); }};
}

}  // namespace vrukit::cli

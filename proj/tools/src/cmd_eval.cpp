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
#include "vrukit/dataset_tree.hpp"
#include "vrukit/detection_io.hpp"
#include "vrukit/error.hpp"
#include "vrukit/eval.hpp"
#include "vrukit/label_map.hpp"

namespace vrukit::cli {

namespace fs = std::filesystem;

namespace {

struct EvalArgs {
  fs::path dets;
  fs::path gts;
  std::string split = "train";
  std::optional<fs::path> classes;
  std::optional<fs::path> ignore;
  std::optional<fs::path> images;
  double iou_lo = 0.50;
  double iou_hi = 0.95;
  double iou_step = 0.05;
  fs::path out;
};

int run_eval(const EvalArgs& a) {
  require_path(a.dets, "detections");
  require_dir(a.gts, "ground truth");
  if (a.classes) require_file(*a.classes, "class list");
  if (a.ignore) require_dir(*a.ignore, "ignore regions");
  if (a.images) require_dir(*a.images, "images");

  EvalConfig config;
  config.iou_thresholds = make_iou_thresholds(a.iou_lo, a.iou_hi, a.iou_step);
  config.primary_iou = a.iou_lo;
  AnnotationsByFrame gt;
  Modality modality = Modality::kRgb;
  if (is_dataset_tree(a.gts)) {
    const TreeInfo info = read_tree_info(a.gts);
    modality = info.modality;
    config.class_names = a.classes ? read_class_names_file(*a.classes) : info.class_names;
    gt = load_tree_split(a.gts, parse_split(a.split));
  } else {
    config.class_names = a.classes ? read_class_names_file(*a.classes) : default_class_names();
    gt = load_ground_truth(a.gts, a.ignore, a.images);
  }
  const DetectionsByFrame dets = load_detections(a.dets, modality);
  const EvalReport report = evaluate(dets, gt, config);
  write_json(a.out, to_json(report));
  std::cout << report_to_text(report);
  return 0;
}

}  // namespace

Command add_eval(CLI::App& root) {
  auto args = std::make_shared<EvalArgs>();
  CLI::App* app = root.add_subcommand(
      "eval", "Score detections against ground truth: precision, recall, mAP50, mAP50:95");
  app->add_option("--dets", args->dets, "Detection directory (*.txt) or JSON file")->required();
  app->add_option("--gts", args->gts, "Converted tree, or a directory of YOLO label files")
      ->required();
  app->add_option("--split", args->split, "Split of a converted tree")->capture_default_str();
  app->add_option("--classes", args->classes, "Class list file (default: the tree's classes)");
  app->add_option("--ignore", args->ignore, "Ignore-region directory for a plain label directory");
  app->add_option("--images", args->images,
                  "Image directory for a plain label directory; unlabelled images count as "
                  "empty frames");
  app->add_option("--iou-lo", args->iou_lo, "First IoU threshold, also the primary one")
      ->capture_default_str();
  app->add_option("--iou-hi", args->iou_hi, "Last IoU threshold")->capture_default_str();
  app->add_option("--iou-step", args->iou_step, "IoU threshold step")->capture_default_str();
  app->add_option("--out", args->out, "Report JSON path")->required();
  return {app, [args] { return run_eval(*args); }};
}

}  // namespace vrukit::cli

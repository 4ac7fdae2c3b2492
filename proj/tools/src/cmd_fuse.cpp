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
#include "vrukit/detection_io.hpp"
#include "vrukit/error.hpp"
#include "vrukit/fusion.hpp"
#include "vrukit/text.hpp"

namespace vrukit::cli {

namespace fs = std::filesystem;

namespace {

struct FuseArgs {
  fs::path rgb;
  fs::path tir;
  std::string config = "default";
  fs::path out;
  std::optional<fs::path> audit;
};

int run_fuse(const FuseArgs& a) {
  require_path(a.rgb, "RGB detections");
  require_path(a.tir, "thermal detections");
  FusionConfig config;
  if (a.config != "default") {
    require_file(a.config, "fusion config");
    config = parse_fusion_config(read_text_file(a.config));
  }
  validate(config);

  const DetectionsByFrame rgb = load_detections(a.rgb, Modality::kRgb);
  const DetectionsByFrame tir = load_detections(a.tir, Modality::kThermal);
  const std::vector<StreamFrame> stream = pair_streams(rgb, tir);
  const std::vector<FusedFrame> fused = fuse_stream(stream, config);

  DetectionsByFrame out;
  std::size_t in_rgb = 0, in_tir = 0, n_out = 0, both = 0, rgb_only = 0, tir_only = 0;
  for (const StreamFrame& f : stream) {
    in_rgb += f.rgb ? f.rgb->size() : 0;
    in_tir += f.tir ? f.tir->size() : 0;
  }
  for (const FusedFrame& f : fused) {
    std::vector<Detection>& dets = out[f.frame_id];
    for (const FusedDetection& d : f.result.detections) {
      dets.push_back(d.as_detection());
      ++n_out;
      switch (d.support) {
        case Support::kBoth:
          ++both;
          break;
        case Support::kRgbOnly:
          ++rgb_only;
          break;
        case Support::kTirOnly:
          ++tir_only;
          break;
      }
    }
  }
  write_detection_dir(a.out, out);
  const nlohmann::ordered_json doc = {
      {"config", to_json(config)},
      {"totals",
       {{"frames", fused.size()},
        {"rgb_inputs", in_rgb},
        {"thermal_inputs", in_tir},
        {"outputs", n_out},
        {"both", both},
        {"rgb_only", rgb_only},
        {"thermal_only", tir_only}}},
      {"frames", audit_to_json(fused)}};
  write_json(a.audit ? *a.audit : a.out / "fusion_audit.json", doc);

  std::cout << render_table({{"Frames", "RGB in", "Thermal in", "Fused out", "Both", "RGB only",
                              "Thermal only"},
                             {std::to_string(fused.size()), std::to_string(in_rgb),
                              std::to_string(in_tir), std::to_string(n_out), std::to_string(both),
                              std::to_string(rgb_only), std::to_string(tir_only)}});
  return 0;
}

}  // namespace

Command add_fuse(CLI::App& root) {
  auto args = std::make_shared<FuseArgs>();
  CLI::App* app =
      root.add_subcommand("fuse", "Late fusion of paired RGB and thermal detections per frame");
  app->add_option("--rgb", args->rgb, "RGB detections: directory (*.txt) or JSON")->required();
  app->add_option("--tir", args->tir, "Thermal detections: directory (*.txt) or JSON")
      ->required();
  app->add_option("--cfg,--config", args->config, "Fusion config JSON, or 'default'")
      ->capture_default_str();
  app->add_option("--out", args->out, "Output directory for fused per-frame files")->required();
  app->add_option("--audit", args->audit,
                  "Audit JSON path (default: <out>/fusion_audit.json)");
  return {app, [args] { return run_fuse(*args); }};
}

}  // namespace vrukit::cli

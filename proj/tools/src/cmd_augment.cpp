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

#include <cstdio>
#include <iostream>
#include <memory>
#include <system_error>

#include "common.hpp"
#include "vrukit/augment.hpp"
#include "vrukit/dataset_tree.hpp"
#include "vrukit/error.hpp"
#include "vrukit/image.hpp"
#include "vrukit/text.hpp"

namespace vrukit::cli {

namespace fs = std::filesystem;

namespace {

struct AugmentArgs {
  fs::path dataset;
  std::string split = "train";
  std::optional<std::string> level;
  std::optional<fs::path> pipeline;
  int copies = 1;
  std::optional<std::uint64_t> seed;
  fs::path dst;
  std::optional<fs::path> log;
  std::optional<int> threads;
};

struct Job {
  std::string frame_id;
  fs::path image;
  int copy = 0;
};

struct JobResult {
  std::string output;
  std::uint64_t frame_seed = 0;
  std::uint64_t pixels_hash = 0;
  std::vector<AppliedTransform> log;
};

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t pixel_hash(const ImageBuffer& img) {
  return fnv1a64(std::string_view(reinterpret_cast<const char*>(img.data.data()), img.data.size()));
}

int run_augment(const AugmentArgs& a) {
  require_dir(a.dataset, "dataset");
  if (a.copies < 1) throw ConfigError("--copies must be at least 1");
  PipelineSpec spec;
  if (a.pipeline) {
    require_file(*a.pipeline, "pipeline spec");
    spec = parse_pipeline_spec(read_text_file(*a.pipeline));
  } else {
    spec = preset_pipeline(parse_augment_level(a.level.value_or("light")));
  }
  if (a.seed) spec.master_seed = *a.seed;
  validate_pipeline(spec);
  const int threads = thread_count(a.threads);

  TreeInfo info = read_tree_info(a.dataset);
  const Split split = parse_split(a.split);
  const std::string s(to_string(split));
  const DatasetIndex index = scan_tree_split(a.dataset, split, info.modality);

  std::error_code ec;
  if (fs::exists(a.dst, ec) && !fs::is_empty(a.dst, ec)) {
    throw ConfigError("destination '" + a.dst.string() + "' is not empty");
  }
  fs::create_directories(a.dst, ec);
  if (ec) throw IoError("cannot create '" + a.dst.string() + "': " + ec.message());
  fs::copy(a.dataset, a.dst, fs::copy_options::recursive | fs::copy_options::overwrite_existing,
           ec);
  if (ec) throw IoError("cannot copy the dataset into '" + a.dst.string() + "': " + ec.message());

  std::vector<Job> jobs;
  for (const FrameEntry& f : index.frames) {
    for (int c = 1; c <= a.copies; ++c) jobs.push_back({f.frame_id, f.image_path, c});
  }
  std::vector<JobResult> results(jobs.size());
  const fs::path images_out = a.dst / "images" / s;
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const Job& job = jobs[i];
    const std::string stem = job.frame_id + "_aug" + std::to_string(job.copy);
    const ImageBuffer input = read_image(job.image);
    JobResult& r = results[i];
    r.frame_seed = fnv1a64(job.frame_id) + static_cast<std::uint64_t>(job.copy);
    AugmentResult out = apply_pipeline(input, {}, spec, r.frame_seed);
    r.output = stem + fold_case(job.image.extension().string());
    write_image(images_out / r.output, out.image);
    r.pixels_hash = pixel_hash(out.image);
    r.log = std::move(out.log);
    for (const char* sub : {"labels", "ignore"}) {
      const fs::path src = a.dataset / sub / s / (job.frame_id + ".txt");
      std::error_code copy_ec;
      if (fs::is_regular_file(src, copy_ec)) {
        fs::copy_file(src, a.dst / sub / s / (stem + ".txt"),
                      fs::copy_options::overwrite_existing, copy_ec);
        if (copy_ec) throw IoError("cannot copy '" + src.string() + "': " + copy_ec.message());
      }
    }
  });

  nlohmann::ordered_json frames = nlohmann::ordered_json::array();
  std::size_t applied = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    applied += results[i].log.size();
    frames.push_back({{"frame_id", jobs[i].frame_id},
                      {"copy", jobs[i].copy},
                      {"output", results[i].output},
                      {"frame_seed", results[i].frame_seed},
                      {"pixels_fnv1a64", hex(results[i].pixels_hash)},
                      {"transforms", to_json(results[i].log)}});
  }
  info.augmentation = {{"level", std::string(to_string(spec.level))},
                       {"seed", spec.master_seed},
                       {"split", s},
                       {"copies", a.copies},
                       {"images_added", jobs.size()}};
  write_tree_info(a.dst, info);
  const nlohmann::ordered_json doc = {{"pipeline", to_json(spec)},
                                      {"split", s},
                                      {"copies", a.copies},
                                      {"source_images", index.frames.size()},
                                      {"images_added", jobs.size()},
                                      {"frames", std::move(frames)}};
  write_json(a.log ? *a.log : a.dst / "reports" / "augment.json", doc);

  std::cout << render_table({{"Split", "Source images", "Copies", "Added", "Transforms applied"},
                             {s, std::to_string(index.frames.size()), std::to_string(a.copies),
                              std::to_string(jobs.size()), std::to_string(applied)}});
  return 0;
}

}  // namespace

Command add_augment(CLI::App& root) {
  auto args = std::make_shared<AugmentArgs>();
  CLI::App* app = root.add_subcommand(
      "augment", "Write a copy of a tree with augmented '_aug<n>' images added to one split");
  app->add_option("--dataset", args->dataset, "Converted tree (left unchanged)")->required();
  app->add_option("--split", args->split, "Split to augment")->capture_default_str();
  auto* level = app->add_option("--level", args->level, "Preset: none, light, heavy (default light)");
  auto* pipeline = app->add_option("--pipeline", args->pipeline, "Pipeline spec JSON");
  level->excludes(pipeline);
  pipeline->excludes(level);
  app->add_option("--copies", args->copies, "Augmented copies per image")->capture_default_str();
  app->add_option("--seed", args->seed, "Master seed (overrides the spec's)");
  app->add_option("--dst", args->dst, "Output tree; must be empty or absent")->required();
  app->add_option("--log", args->log, "Log JSON path (default: <dst>/reports/augment.json)");
  app->add_option("--threads", args->threads, "Worker threads (default: VRUKIT_THREADS or all cores)");
  return {app, [args] { return run_augment(*args); }};
}

}  // namespace vrukit::cli

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
#include "vrukit/fixtures.hpp"
#include "vrukit/text.hpp"

namespace vrukit::cli {

namespace {

struct FixtureArgs {
  std::filesystem::path out;
  FixtureOptions options;
};

int run_make_fixtures(const FixtureArgs& a) {
  const FixtureSummary s = write_fixture(a.out, a.options);
  std::cout << render_table({{"Frames", "Object-free", "Records", "Boxes", "RGB dets", "Thermal dets"},
                             {std::to_string(s.frames), std::to_string(s.images_without_objects),
                              std::to_string(s.source_records), std::to_string(s.boxed_records),
                              std::to_string(s.detections_rgb),
                              std::to_string(s.detections_thermal)}});
  return 0;
}

}  // namespace

Command add_make_fixtures(CLI::App& root) {
  auto args = std::make_shared<FixtureArgs>();
  CLI::App* app = root.add_subcommand("make-fixtures", "Write the synthetic test dataset");
  app->group("");  // hidden from --help
  app->add_option("--out", args->out, "Fixture root")->required();
  app->add_option("--seed", args->options.seed, "Generator seed")->capture_default_str();
  app->add_option("--frames", args->options.frames_per_source, "Frames per source format")
      ->capture_default_str();
  app->add_flag("--inject-unmapped", args->options.inject_unmapped_class,
                "Add a KITTI object with an unmapped class");
  return {app, [args] { return run_make_fixtures(*args); }};
}

}  // namespace vrukit::cli

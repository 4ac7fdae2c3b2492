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
#include <cstdint>
#include <filesystem>

namespace vrukit {

// Synthetic mini-dataset used by the acceptance suite and `make-fixtures`.
//
//   <root>/kitti/image_2/*.png   <root>/kitti/label_2/*.txt      10 RGB frames
//   <root>/bdd100k/images/*.png  <root>/bdd100k/labels/det.json  10 RGB frames
//   <root>/flir/images/*.png     <root>/flir/annotations/coco.json
//                                                 10 thermal frames, one empty
//   <root>/dets/rgb/*.txt  <root>/dets/thermal/*.txt
//                      per-frame detections for the FLIR frames (unit frame,
//                      ids of the full unified class list)

struct FixtureOptions {
  std::uint64_t seed = 7;
  int frames_per_source = 10;
  // Adds one KITTI object whose class has no mapping.
  bool inject_unmapped_class = false;
};

struct FixtureSummary {
  std::size_t frames = 0;
  std::size_t images_without_objects = 0;
  std::size_t source_records = 0;  // every label record written, incl. box-less ones
  std::size_t boxed_records = 0;
  std::size_t detections_rgb = 0;
  std::size_t detections_thermal = 0;
};

/// Writes the fixture under `root`, which must not already contain one.
/// Output is a pure function of the options. Throws IoError.
FixtureSummary write_fixture(const std::filesystem::path& root, const FixtureOptions& options = {});

}  // namespace vrukit

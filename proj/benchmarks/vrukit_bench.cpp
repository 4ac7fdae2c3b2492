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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "vrukit/augment.hpp"
#include "vrukit/eval.hpp"
#include "vrukit/fusion.hpp"
#include "vrukit/geometry.hpp"
#include "vrukit/rng.hpp"

namespace {

using namespace vrukit;

BoundingBox random_box(Rng& rng) {
  const double w = rng.uniform(0.02, 0.3);
  const double h = rng.uniform(0.02, 0.3);
  const double x = rng.uniform(0.0, 1.0 - w);
  const double y = rng.uniform(0.0, 1.0 - h);
  return {x, y, x + w, y + h};
}

std::vector<Detection> random_detections(Rng& rng, std::size_t n, Modality m) {
  std::vector<Detection> out(n);
  for (Detection& d : out) {
    d = {static_cast<int>(rng.uniform_int(0, 8)), random_box(rng), rng.uniform(0.0, 1.0), m};
  }
  return out;
}

void BM_Iou(benchmark::State& state) {
  Rng rng(1);
  std::vector<BoundingBox> boxes(1024);
  for (auto& b : boxes) b = random_box(rng);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(iou(boxes[i & 1023], boxes[(i * 7 + 3) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_Iou);

void BM_Nms(benchmark::State& state) {
  Rng rng(2);
  const auto dets = random_detections(rng, static_cast<std::size_t>(state.range(0)), Modality::kRgb);
  for (auto _ : state) benchmark::DoNotOptimize(nms(dets, 0.65, true));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Nms)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Evaluate(benchmark::State& state) {
  Rng rng(3);
  DetectionsByFrame dets;
  AnnotationsByFrame gts;
  for (int f = 0; f < state.range(0); ++f) {
    const std::string id = "f" + std::to_string(f);
    auto& g = gts[id];
    for (int k = 0; k < 8; ++k) {
      Annotation a;
      a.class_id = static_cast<int>(rng.uniform_int(0, 8));
      a.box = random_box(rng);
      g.push_back(a);
    }
    dets[id] = random_detections(rng, 20, Modality::kRgb);
  }
  EvalConfig cfg;
  cfg.class_names = {"Car", "Pedestrian", "Cyclist", "Bus", "Truck",
                     "Animal", "Motorcycle", "Scooter", "OtherVehicle"};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(dets, gts, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Evaluate)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FuseFrame(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rgb = random_detections(rng, n, Modality::kRgb);
  auto tir = rgb;
  for (Detection& d : tir) {
    d.modality = Modality::kThermal;
    d.confidence = rng.uniform(0.0, 1.0);
  }
  const FusionConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(fuse_frame(rgb, tir, cfg));
}
BENCHMARK(BM_FuseFrame)->RangeMultiplier(4)->Range(4, 256);

void BM_Augment(benchmark::State& state) {
  const auto level = static_cast<AugmentLevel>(state.range(0));
  ImageBuffer img = ImageBuffer::filled(640, 512, 0, 0, 0);
  Rng rng(5);
  for (auto& px : img.data) px = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  const PipelineSpec spec = preset_pipeline(level, 9);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(apply_pipeline(img, {}, spec, ++seed));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(img.data.size()));
}
BENCHMARK(BM_Augment)
    ->Arg(static_cast<int>(AugmentLevel::kLight))
    ->Arg(static_cast<int>(AugmentLevel::kHeavy))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

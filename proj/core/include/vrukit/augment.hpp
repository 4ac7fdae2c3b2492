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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrukit/image.hpp"
#include "vrukit/label_map.hpp"

namespace vrukit {

enum class AugmentLevel { kNone, kLight, kHeavy, kCustom };

std::string_view to_string(AugmentLevel level);
AugmentLevel parse_augment_level(std::string_view text);

/// Photometric and occlusion transforms. None of them moves pixels, so
/// annotation boxes pass through untouched.
enum class TransformKind {
  kBrightnessContrast,
  kGaussianBlur,
  kGaussNoise,
  kRain,
  kFog,
  kSnow,
  kCoarseDropout,
  kGridDropout,
  kToGray,
  kChannelDropout,
};

std::string_view to_string(TransformKind kind);
TransformKind parse_transform_kind(std::string_view text);

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const ParamRange&, const ParamRange&) = default;
};

/// Parameter ranges a transform samples from, keyed by parameter name.
using ParamRanges = std::map<std::string, ParamRange, std::less<>>;

/// Default ranges for `kind`.
ParamRanges default_params(TransformKind kind);

struct TransformSpec {
  TransformKind kind = TransformKind::kBrightnessContrast;
  double weight = 1.0;  // selection weight inside a one-of step
  ParamRanges params;   // defaults filled in
};

TransformSpec make_transform(TransformKind kind);

/// A step applies with `probability`; it then runs one of `choices`, picked
/// in proportion to their weights.
struct PipelineStep {
  double probability = 1.0;
  std::vector<TransformSpec> choices;
};

struct PipelineSpec {
  AugmentLevel level = AugmentLevel::kNone;
  std::vector<PipelineStep> steps;
  std::uint64_t master_seed = 0;
};

/// NONE, LIGHT and HEAVY presets. kCustom yields an empty pipeline.
PipelineSpec preset_pipeline(AugmentLevel level, std::uint64_t master_seed = 0);

/// Loads a pipeline file:
///   {"level": "light", "seed": 7, "overrides": {"gauss_noise": {"sigma": [5, 10]}}}
/// or a custom list
///   {"seed": 7, "steps": [{"probability": 0.5, "one_of": [
///       {"transform": "rain", "weight": 1, "params": {...}}]}]}
/// Throws ConfigError.
PipelineSpec parse_pipeline_spec(std::string_view json_text);
nlohmann::ordered_json to_json(const PipelineSpec& spec);

/// Throws ConfigError when a step has no choices, a probability lies outside
/// [0, 1], a weight is negative, or a range is inverted or names an unknown
/// parameter.
void validate_pipeline(const PipelineSpec& spec);

struct AppliedTransform {
  std::string name;
  std::vector<std::pair<std::string, double>> params;
};

struct AugmentResult {
  ImageBuffer image;
  std::vector<Annotation> annotations;
  std::vector<AppliedTransform> log;
};

/// Per-frame generator seed derived from the pipeline seed and a frame seed.
std::uint64_t frame_rng_seed(std::uint64_t master_seed, std::uint64_t frame_seed) noexcept;

/// Runs `spec` over one image. Output depends only on (image, spec,
/// frame_seed). Throws ValidationError for an empty or malformed image.
AugmentResult apply_pipeline(const ImageBuffer& image,
                             std::span<const Annotation> annotations,
                             const PipelineSpec& spec, std::uint64_t frame_seed);

nlohmann::ordered_json to_json(std::span<const AppliedTransform> log);

}  // namespace vrukit

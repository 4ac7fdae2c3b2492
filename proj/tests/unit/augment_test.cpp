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

#include <gtest/gtest.h>

#include "vrukit/augment.hpp"
#include "vrukit/error.hpp"
#include "vrukit/rng.hpp"

namespace vrukit {
namespace {

ImageBuffer random_image(int w, int h, std::uint64_t seed) {
  ImageBuffer img = ImageBuffer::filled(w, h, 0, 0, 0);
  Rng rng(seed);
  for (auto& px : img.data) px = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  return img;
}

std::vector<Annotation> some_annotations() {
  std::vector<Annotation> out(3);
  out[0].box = {1, 2, 10, 12};
  out[1].class_id = 4;
  out[1].box = {0.5, 0.25, 30, 20};
  out[2].ignore = true;
  out[2].class_id = kIgnoreClassId;
  out[2].box = {5, 5, 6, 6};
  return out;
}

PipelineSpec single_step(TransformKind kind, ParamRanges overrides = {}) {
  PipelineSpec spec;
  spec.level = AugmentLevel::kCustom;
  TransformSpec t = make_transform(kind);
  for (auto& [k, v] : overrides) t.params[k] = v;
  spec.steps.push_back({1.0, {t}});
  return spec;
}

TEST(Augment, PresetShapes) {
  const PipelineSpec light = preset_pipeline(AugmentLevel::kLight);
  ASSERT_EQ(light.steps.size(), 4u);
  EXPECT_EQ(light.steps[0].choices[0].kind, TransformKind::kBrightnessContrast);
  EXPECT_EQ(light.steps[1].choices[0].kind, TransformKind::kGaussianBlur);
  EXPECT_EQ(light.steps[2].choices[0].kind, TransformKind::kGaussNoise);
  EXPECT_EQ(light.steps[3].choices.size(), 3u);
  const PipelineSpec heavy = preset_pipeline(AugmentLevel::kHeavy);
  ASSERT_EQ(heavy.steps.size(), 5u);
  EXPECT_EQ(heavy.steps[0].choices[1].kind, TransformKind::kGridDropout);
  EXPECT_EQ(heavy.steps[1].choices[0].kind, TransformKind::kToGray);
  EXPECT_EQ(heavy.steps[2].choices[0].kind, TransformKind::kBrightnessContrast);
  EXPECT_TRUE(preset_pipeline(AugmentLevel::kNone).steps.empty());
}

TEST(Augment, NoneIsIdentity) {
  const ImageBuffer img = random_image(20, 10, 1);
  const auto annos = some_annotations();
  const AugmentResult r = apply_pipeline(img, annos, preset_pipeline(AugmentLevel::kNone), 9);
  EXPECT_EQ(r.image, img);
  EXPECT_TRUE(r.log.empty());
  ASSERT_EQ(r.annotations.size(), annos.size());
}

TEST(Augment, LightBrightnessShiftIsFiftyOne) {
  PipelineSpec spec = preset_pipeline(AugmentLevel::kLight, 3);
  spec.steps[0].choices[0].params["brightness"] = {0.2, 0.2};
  spec.steps[0].choices[0].params["contrast"] = {0.0, 0.0};
  for (std::size_t i = 1; i < spec.steps.size(); ++i) spec.steps[i].probability = 0.0;
  const AugmentResult r = apply_pipeline(ImageBuffer::filled(8, 8, 100, 100, 100), {}, spec, 1);
  for (auto px : r.image.data) ASSERT_EQ(px, 151);
  const AugmentResult hi = apply_pipeline(ImageBuffer::filled(8, 8, 220, 10, 204), {}, spec, 1);
  EXPECT_EQ(hi.image.pixel(0, 0)[0], 255);
  EXPECT_EQ(hi.image.pixel(0, 0)[1], 61);
  EXPECT_EQ(hi.image.pixel(0, 0)[2], 255);
}

TEST(Augment, DeterministicPerFrame) {
  const ImageBuffer img = random_image(48, 32, 2);
  for (AugmentLevel level : {AugmentLevel::kLight, AugmentLevel::kHeavy}) {
    const PipelineSpec spec = preset_pipeline(level, 77);
    const AugmentResult a = apply_pipeline(img, {}, spec, 5);
    const AugmentResult b = apply_pipeline(img, {}, spec, 5);
    EXPECT_EQ(a.image, b.image);
    EXPECT_EQ(to_json(a.log), to_json(b.log));
    const AugmentResult c = apply_pipeline(img, {}, spec, 6);
    EXPECT_NE(a.image, c.image);
  }
}

TEST(Augment, EveryTransformKeepsShapeAndBoxes) {
  const ImageBuffer img = random_image(40, 30, 4);
  const auto annos = some_annotations();
  for (int k = 0; k <= static_cast<int>(TransformKind::kChannelDropout); ++k) {
    const auto kind = static_cast<TransformKind>(k);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const AugmentResult r = apply_pipeline(img, annos, single_step(kind), seed);
      EXPECT_EQ(r.image.width, img.width) << to_string(kind);
      EXPECT_EQ(r.image.height, img.height) << to_string(kind);
      EXPECT_TRUE(r.image.valid());
      ASSERT_EQ(r.annotations.size(), annos.size());
      for (std::size_t i = 0; i < annos.size(); ++i) {
        EXPECT_EQ(r.annotations[i].box, annos[i].box);
        EXPECT_EQ(r.annotations[i].class_id, annos[i].class_id);
        EXPECT_EQ(r.annotations[i].ignore, annos[i].ignore);
      }
      ASSERT_EQ(r.log.size(), 1u);
      EXPECT_EQ(r.log[0].name, to_string(kind));
    }
  }
}

TEST(Augment, ToGrayEqualizesChannels) {
  const AugmentResult r =
      apply_pipeline(random_image(16, 16, 8), {}, single_step(TransformKind::kToGray), 0);
  for (std::size_t i = 0; i < r.image.data.size(); i += 3) {
    ASSERT_EQ(r.image.data[i], r.image.data[i + 1]);
    ASSERT_EQ(r.image.data[i], r.image.data[i + 2]);
  }
}

TEST(Augment, ChannelDropoutZeroesOneChannel) {
  const AugmentResult r = apply_pipeline(ImageBuffer::filled(6, 6, 10, 20, 30), {},
                                         single_step(TransformKind::kChannelDropout), 3);
  int zeroed = 0;
  for (int c = 0; c < 3; ++c) zeroed += r.image.pixel(2, 2)[c] == 0;
  EXPECT_EQ(zeroed, 1);
}

TEST(Augment, SaturatesInsteadOfWrapping) {
  const AugmentResult bright =
      apply_pipeline(ImageBuffer::filled(8, 8, 250, 250, 250), {},
                     single_step(TransformKind::kBrightnessContrast,
                                 {{"brightness", {0.2, 0.2}}, {"contrast", {0.2, 0.2}}}),
                     0);
  for (auto px : bright.image.data) ASSERT_EQ(px, 255);
  const AugmentResult dark =
      apply_pipeline(ImageBuffer::filled(8, 8, 5, 5, 5), {},
                     single_step(TransformKind::kBrightnessContrast,
                                 {{"brightness", {-0.2, -0.2}}, {"contrast", {0.0, 0.0}}}),
                     0);
  for (auto px : dark.image.data) ASSERT_EQ(px, 0);
}

TEST(Augment, Errors) {
  EXPECT_THROW(apply_pipeline(ImageBuffer{}, {}, preset_pipeline(AugmentLevel::kLight), 0),
               ValidationError);
  PipelineSpec bad = preset_pipeline(AugmentLevel::kLight);
  bad.steps[0].probability = 1.5;
  EXPECT_THROW(validate_pipeline(bad), ConfigError);
  EXPECT_THROW(parse_augment_level("medium"), ConfigError);
  EXPECT_THROW(parse_transform_kind("Mosaic"), ConfigError);
}

TEST(PipelineSpecJson, PresetWithOverrides) {
  const PipelineSpec spec = parse_pipeline_spec(
      R"({"level": "light", "seed": 12, "overrides": {"GaussianBlur": {"sigma": [1, 1]}}})");
  EXPECT_EQ(spec.level, AugmentLevel::kLight);
  EXPECT_EQ(spec.master_seed, 12u);
  EXPECT_EQ(spec.steps[1].choices[0].params.at("sigma"), (ParamRange{1, 1}));
}

TEST(PipelineSpecJson, CustomStepsRoundTrip) {
  const PipelineSpec spec = parse_pipeline_spec(R"({"level": "custom", "seed": 1, "steps": [
      {"probability": 0.5, "one_of": [{"transform": "RandomRain", "weight": 2},
                                       {"transform": "snow"}]}]})");
  ASSERT_EQ(spec.steps.size(), 1u);
  EXPECT_EQ(spec.steps[0].probability, 0.5);
  EXPECT_EQ(spec.steps[0].choices[0].kind, TransformKind::kRain);
  EXPECT_EQ(spec.steps[0].choices[0].weight, 2.0);
  const PipelineSpec again = parse_pipeline_spec(to_json(spec).dump());
  EXPECT_EQ(to_json(again), to_json(spec));
  EXPECT_THROW(parse_pipeline_spec(R"({"level": "light", "steps": []})"), ConfigError);
  EXPECT_THROW(parse_pipeline_spec("nope"), ConfigError);
}

TEST(Augment, FrameSeedMixing) {
  EXPECT_NE(frame_rng_seed(1, 2), frame_rng_seed(2, 1));
  EXPECT_EQ(frame_rng_seed(7, 9), frame_rng_seed(7, 9));
}

}  // namespace
}  // namespace vrukit

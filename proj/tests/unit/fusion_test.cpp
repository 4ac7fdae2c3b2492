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

#include <numeric>

#include "oracles.hpp"
#include "vrukit/error.hpp"
#include "vrukit/fusion.hpp"

namespace vrukit {
namespace {

Detection det(int cls, BoundingBox b, double c, Modality m) { return {cls, b, c, m}; }

constexpr Modality kRgb = Modality::kRgb;
constexpr Modality kTir = Modality::kThermal;

TEST(Fuse, MatchedPairIsWeightedMean) {
  const std::vector<Detection> rgb = {det(0, {0.1, 0.1, 0.5, 0.5}, 0.8, kRgb)};
  const std::vector<Detection> tir = {det(0, {0.1, 0.1, 0.5, 0.5}, 0.6, kTir)};
  const auto out = fuse_frame(rgb, tir, {});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(out[0].confidence, 0.7, 1e-15);
  EXPECT_EQ(out[0].support, Support::kBoth);
  EXPECT_EQ(out[0].rgb_confidence, 0.8);
  EXPECT_EQ(out[0].tir_confidence, 0.6);
  EXPECT_EQ(out[0].box, rgb[0].box);
}

TEST(Fuse, BoxIsConfidenceWeighted) {
  const std::vector<Detection> rgb = {det(0, {0.0, 0.0, 0.4, 0.4}, 0.9, kRgb)};
  const std::vector<Detection> tir = {det(0, {0.0, 0.0, 0.4, 0.5}, 0.3, kTir)};
  const auto out = fuse_frame(rgb, tir, {});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(out[0].box.y_max, (0.9 * 0.4 + 0.3 * 0.5) / 1.2, 1e-15);
  FusionConfig keep;
  keep.box_mode = FusedBoxMode::kKeepBest;
  EXPECT_EQ(fuse_frame(rgb, tir, keep)[0].box, rgb[0].box);
}

TEST(Fuse, SingleModalityPassThrough) {
  Rng rng(4);
  const auto rgb = oracle::random_detections(rng, 12, 3, kRgb);
  const auto out = fuse_frame(rgb, {}, {});
  std::vector<Detection> expected;
  for (const Detection& d : rgb) {
    if (d.confidence >= 0.05) expected.push_back(d);
  }
  expected = nms(expected, 0.65, true);
  ASSERT_EQ(out.size(), expected.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].support, Support::kRgbOnly);
    EXPECT_EQ(out[i].box, expected[i].box);
    EXPECT_EQ(out[i].confidence, expected[i].confidence);
    EXPECT_FALSE(out[i].tir_confidence.has_value());
  }
}

TEST(Fuse, PenaltyAndFloor) {
  FusionConfig cfg;
  cfg.unmatched_penalty_tir = 0.5;
  cfg.confidence_floor = 0.3;
  const std::vector<Detection> tir = {det(1, {0, 0, 0.2, 0.2}, 0.8, kTir),
                                      det(1, {0.5, 0.5, 0.7, 0.7}, 0.5, kTir)};
  const auto out = fuse_frame({}, tir, cfg);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].confidence, 0.4);
  EXPECT_EQ(out[0].support, Support::kTirOnly);
}

TEST(Fuse, DifferentClassesNeverPair) {
  const std::vector<Detection> rgb = {det(0, {0, 0, 0.5, 0.5}, 0.8, kRgb)};
  const std::vector<Detection> tir = {det(1, {0, 0, 0.5, 0.5}, 0.6, kTir)};
  const auto out = fuse_frame(rgb, tir, {});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].support, Support::kRgbOnly);
  EXPECT_EQ(out[1].support, Support::kTirOnly);
}

TEST(Fuse, ConfigValidation) {
  FusionConfig cfg;
  cfg.w_rgb = cfg.w_tir = 0.0;
  EXPECT_THROW(fuse_frame({}, {}, cfg), ConfigError);
  cfg = {};
  cfg.iou_match_threshold = 1.0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = {};
  cfg.unmatched_penalty_rgb = 0.0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = {};
  cfg.confidence_floor = 1.0;
  EXPECT_THROW(validate(cfg), ConfigError);
  EXPECT_THROW(parse_fusion_config(R"({"w_rgb": 1, "colour": 2})"), ConfigError);
  EXPECT_THROW(parse_fusion_config("[]"), ConfigError);
}

TEST(Fuse, ConfigJsonRoundTrip) {
  const FusionConfig cfg = parse_fusion_config(
      R"({"w_rgb": 0.3, "w_tir": 0.7, "iou_match_threshold": 0.4, "box_mode": "keep_best"})");
  EXPECT_EQ(cfg.w_rgb, 0.3);
  EXPECT_EQ(cfg.box_mode, FusedBoxMode::kKeepBest);
  EXPECT_EQ(cfg.final_nms_iou, 0.65);
  const FusionConfig back = parse_fusion_config(to_json(cfg).dump());
  EXPECT_EQ(to_json(back), to_json(cfg));
}

void expect_equal(const std::vector<FusedDetection>& a, const std::vector<FusedDetection>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i], b[i]) << i;
}

TEST(Fuse, MatchesOracle) {
  Rng rng(6);
  for (int trial = 0; trial < 4000; ++trial) {
    const bool ties = trial % 3 == 0;
    auto [rgb, tir] = oracle::random_fusion_case(rng, static_cast<int>(rng.uniform_int(0, 6)), 3,
                                                 ties ? 6 : 0, ties ? 4 : 0);
    FusionConfig cfg;
    cfg.w_rgb = rng.uniform(0.0, 1.0);
    cfg.w_tir = rng.uniform(0.05, 1.0);
    cfg.iou_match_threshold = rng.uniform(0.2, 0.8);
    cfg.unmatched_penalty_rgb = rng.uniform(0.3, 1.0);
    cfg.unmatched_penalty_tir = rng.uniform(0.3, 1.0);
    cfg.final_nms_iou = rng.uniform(0.3, 0.8);
    cfg.confidence_floor = rng.uniform(0.0, 0.3);
    expect_equal(fuse_frame(rgb, tir, cfg), oracle::fuse(rgb, tir, cfg));
  }
}

TEST(Fuse, ConfidenceBounded) {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    auto [rgb, tir] = oracle::random_fusion_case(rng, 6, 2);
    FusionConfig cfg;
    cfg.w_rgb = rng.uniform(0.0, 1.0);
    cfg.w_tir = rng.uniform(0.01, 1.0);
    for (const FusedDetection& f : fuse_frame_audited(rgb, tir, cfg).candidates) {
      if (f.support != Support::kBoth) continue;
      ASSERT_TRUE(f.rgb_confidence && f.tir_confidence);
      EXPECT_GE(f.confidence, std::min(*f.rgb_confidence, *f.tir_confidence));
      EXPECT_LE(f.confidence, std::max(*f.rgb_confidence, *f.tir_confidence));
    }
  }
}

Support swapped(Support s) {
  if (s == Support::kRgbOnly) return Support::kTirOnly;
  if (s == Support::kTirOnly) return Support::kRgbOnly;
  return s;
}

TEST(Fuse, ModalitySymmetry) {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    auto [rgb, tir] = oracle::random_fusion_case(rng, 6, 2);
    FusionConfig cfg;
    cfg.w_rgb = rng.uniform(0.1, 1.0);
    cfg.w_tir = rng.uniform(0.1, 1.0);
    cfg.unmatched_penalty_rgb = rng.uniform(0.3, 1.0);
    cfg.unmatched_penalty_tir = rng.uniform(0.3, 1.0);
    FusionConfig mirror = cfg;
    std::swap(mirror.w_rgb, mirror.w_tir);
    std::swap(mirror.unmatched_penalty_rgb, mirror.unmatched_penalty_tir);
    auto relabel = [](std::vector<Detection> v, Modality m) {
      for (Detection& d : v) d.modality = m;
      return v;
    };
    const auto a = fuse_frame(rgb, tir, cfg);
    const auto b = fuse_frame(relabel(tir, kRgb), relabel(rgb, kTir), mirror);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].box, b[i].box);
      EXPECT_EQ(a[i].confidence, b[i].confidence);
      EXPECT_EQ(a[i].support, swapped(b[i].support));
      EXPECT_EQ(a[i].rgb_confidence, b[i].tir_confidence);
    }
  }
}

TEST(Fuse, MonotoneInSourceConfidence) {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const BoundingBox b = oracle::random_box(rng);
    const double cr = rng.uniform(0.05, 0.9);
    const double ct = rng.uniform(0.05, 0.9);
    FusionConfig cfg;
    cfg.w_rgb = rng.uniform(0.0, 1.0);
    const auto lo = fuse_frame_audited(std::vector{det(0, b, cr, kRgb)},
                                       std::vector{det(0, b, ct, kTir)}, cfg);
    const auto hi = fuse_frame_audited(std::vector{det(0, b, cr + 0.05, kRgb)},
                                       std::vector{det(0, b, ct, kTir)}, cfg);
    EXPECT_GE(hi.candidates[0].confidence, lo.candidates[0].confidence);
  }
}

TEST(Fuse, AuditAccountsForEveryInput) {
  Rng rng(10);
  for (int trial = 0; trial < 500; ++trial) {
    auto [rgb, tir] = oracle::random_fusion_case(rng, 8, 2);
    FusionConfig cfg;
    cfg.confidence_floor = 0.2;
    const FusionResult r = fuse_frame_audited(rgb, tir, cfg);
    ASSERT_EQ(r.audit.size(), rgb.size() + tir.size());
    std::size_t kept_outputs = 0;
    std::vector<int> output_refs(r.detections.size(), 0);
    for (std::size_t i = 0; i < r.audit.size(); ++i) {
      const AuditEntry& e = r.audit[i];
      EXPECT_EQ(e.modality, i < rgb.size() ? kRgb : kTir);
      EXPECT_EQ(e.input_index, i < rgb.size() ? i : i - rgb.size());
      const bool kept = e.fate == FusionFate::kMatchedKept || e.fate == FusionFate::kUnmatchedKept;
      EXPECT_EQ(kept, e.output_index.has_value());
      if (e.output_index) {
        ASSERT_LT(*e.output_index, r.detections.size());
        ++output_refs[*e.output_index];
        ++kept_outputs;
      }
      EXPECT_EQ(e.partner_index.has_value(),
                r.candidates[e.candidate_index].support == Support::kBoth);
    }
    for (std::size_t o = 0; o < r.detections.size(); ++o) {
      EXPECT_EQ(output_refs[o], r.detections[o].support == Support::kBoth ? 2 : 1);
    }
  }
}

TEST(Fuse, InputOrderDoesNotMatter) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    auto [rgb, tir] = oracle::random_fusion_case(rng, 7, 2, trial % 2 ? 6 : 0, trial % 2 ? 4 : 0);
    const auto a = fuse_frame(rgb, tir, {});
    std::reverse(rgb.begin(), rgb.end());
    std::rotate(tir.begin(), tir.begin() + static_cast<long>(tir.size() / 2), tir.end());
    expect_equal(a, fuse_frame(rgb, tir, {}));
  }
}

TEST(Stream, ThermalAbsentEverywhere) {
  Rng rng(12);
  std::vector<StreamFrame> frames;
  FusionConfig cfg;
  cfg.unmatched_penalty_rgb = 0.8;
  for (int f = 0; f < 5; ++f) {
    frames.push_back({"f" + std::to_string(f), oracle::random_detections(rng, 5, 2, kRgb),
                      std::nullopt});
  }
  const auto out = fuse_stream(frames, cfg);
  ASSERT_EQ(out.size(), frames.size());
  for (std::size_t f = 0; f < frames.size(); ++f) {
    std::vector<Detection> penalized;
    for (Detection d : *frames[f].rgb) {
      d.confidence *= 0.8;
      if (d.confidence >= cfg.confidence_floor) penalized.push_back(d);
    }
    penalized = nms(penalized, cfg.final_nms_iou, true);
    ASSERT_EQ(out[f].result.detections.size(), penalized.size());
    for (std::size_t i = 0; i < penalized.size(); ++i) {
      EXPECT_EQ(out[f].result.detections[i].confidence, penalized[i].confidence);
      EXPECT_EQ(out[f].result.detections[i].box, penalized[i].box);
    }
  }
}

TEST(Stream, EmptyStream) { EXPECT_TRUE(fuse_stream({}, {}).empty()); }

TEST(Stream, TwentyFramesComposeFrameByFrame) {
  Rng rng(13);
  std::vector<StreamFrame> frames;
  for (int f = 0; f < 20; ++f) {
    auto [rgb, tir] = oracle::random_fusion_case(rng, 5, 3);
    StreamFrame sf{"f" + std::to_string(f), rgb, tir};
    if (f % 7 == 3) sf.rgb.reset();
    if (f % 5 == 4) sf.tir.reset();
    frames.push_back(sf);
  }
  const auto out = fuse_stream(frames, {});
  ASSERT_EQ(out.size(), 20u);
  for (std::size_t f = 0; f < 20; ++f) {
    EXPECT_EQ(out[f].frame_id, frames[f].frame_id);
    expect_equal(out[f].result.detections,
                 fuse_frame(frames[f].rgb.value_or(std::vector<Detection>{}),
                            frames[f].tir.value_or(std::vector<Detection>{}), {}));
  }
}

TEST(Stream, DuplicateFrameIdsAreErrors) {
  const std::vector<StreamFrame> frames = {{"a", std::vector<Detection>{}, std::nullopt},
                                           {"a", std::vector<Detection>{}, std::nullopt}};
  EXPECT_THROW(fuse_stream(frames, {}), ValidationError);
}

TEST(Stream, PairStreamsUnionsFrameIds) {
  DetectionsByFrame rgb, tir;
  rgb["a"] = {};
  rgb["b"] = {};
  tir["b"] = {};
  tir["c"] = {};
  const auto paired = pair_streams(rgb, tir);
  ASSERT_EQ(paired.size(), 3u);
  EXPECT_TRUE(paired[0].rgb && !paired[0].tir);
  EXPECT_TRUE(paired[1].rgb && paired[1].tir);
  EXPECT_TRUE(!paired[2].rgb && paired[2].tir);
}

TEST(Stream, AuditJsonShape) {
  const std::vector<StreamFrame> frames = {
      {"a", std::vector{det(0, {0, 0, 0.5, 0.5}, 0.8, kRgb)},
       std::vector{det(0, {0, 0, 0.5, 0.5}, 0.6, kTir)}}};
  const auto doc = audit_to_json(fuse_stream(frames, {}));
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_EQ(doc[0]["frame_id"], "a");
  EXPECT_EQ(doc[0]["decisions"].size(), 2u);
  EXPECT_EQ(doc[0]["decisions"][0]["fate"], "matched");
}

}  // namespace
}  // namespace vrukit

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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrukit/detection_io.hpp"
#include "vrukit/geometry.hpp"

namespace vrukit {

enum class FusedBoxMode {
  kWeightedAverage,  // coordinates averaged with weights w * confidence
  kKeepBest,         // box of the higher weighted confidence
};

struct FusionConfig {
  double w_rgb = 0.5;
  double w_tir = 0.5;
  double iou_match_threshold = 0.55;
  double unmatched_penalty_rgb = 1.0;
  double unmatched_penalty_tir = 1.0;
  double final_nms_iou = 0.65;
  double confidence_floor = 0.05;
  FusedBoxMode box_mode = FusedBoxMode::kWeightedAverage;
};

/// Throws ConfigError for negative or all-zero weights and out-of-range
/// thresholds or penalties.
void validate(const FusionConfig& config);

/// Fields omitted from the document keep their defaults. Throws ConfigError.
FusionConfig parse_fusion_config(std::string_view json_text);
nlohmann::ordered_json to_json(const FusionConfig& config);

enum class Support { kRgbOnly, kTirOnly, kBoth };

std::string_view to_string(Support support);

struct FusedDetection {
  int class_id = 0;
  BoundingBox box;
  double confidence = 0.0;
  Support support = Support::kRgbOnly;
  std::optional<double> rgb_confidence;
  std::optional<double> tir_confidence;

  Detection as_detection() const;

  friend bool operator==(const FusedDetection&, const FusedDetection&) = default;
};

enum class FusionFate { kMatchedKept, kUnmatchedKept, kFloorDropped, kNmsSuppressed };

std::string_view to_string(FusionFate fate);

/// What happened to one input detection.
struct AuditEntry {
  Modality modality = Modality::kRgb;
  std::size_t input_index = 0;
  std::optional<std::size_t> partner_index;  // matched detection of the other modality
  std::size_t candidate_index = 0;           // into FusionResult::candidates
  FusionFate fate = FusionFate::kUnmatchedKept;
  std::optional<std::size_t> output_index;   // into FusionResult::detections
};

struct FusionResult {
  std::vector<FusedDetection> detections;  // final, rank order
  std::vector<FusedDetection> candidates;  // before the floor and NMS
  std::vector<AuditEntry> audit;           // RGB inputs first, then thermal
};

/// Late fusion of one frame. Same-class cross-modality pairs with IoU at or
/// above the match threshold are paired greedily by descending IoU. A pair
/// scores (w_rgb * c_rgb + w_tir * c_tir) / (w_rgb + w_tir); an unmatched
/// detection keeps its confidence times its modality's penalty. Candidates
/// under the confidence floor are dropped, then class-aware NMS runs.
/// Both inputs must share one image coordinate system.
FusionResult fuse_frame_audited(std::span<const Detection> rgb, std::span<const Detection> tir,
                                const FusionConfig& config);

std::vector<FusedDetection> fuse_frame(std::span<const Detection> rgb,
                                       std::span<const Detection> tir,
                                       const FusionConfig& config);

/// One frame of a paired stream; an absent side is treated as empty.
struct StreamFrame {
  std::string frame_id;
  std::optional<std::vector<Detection>> rgb;
  std::optional<std::vector<Detection>> tir;
};

struct FusedFrame {
  std::string frame_id;
  FusionResult result;
};

/// Fuses frames in input order. Throws ValidationError on a repeated
/// frame id.
std::vector<FusedFrame> fuse_stream(std::span<const StreamFrame> frames,
                                    const FusionConfig& config);

/// Pairs two per-frame detection sets by frame id, sorted by id.
std::vector<StreamFrame> pair_streams(const DetectionsByFrame& rgb, const DetectionsByFrame& tir);

nlohmann::ordered_json audit_to_json(std::span<const FusedFrame> frames);

}  // namespace vrukit

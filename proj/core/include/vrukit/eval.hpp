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
#include <vector>

#include <nlohmann/json.hpp>

#include "vrukit/detection_io.hpp"
#include "vrukit/geometry.hpp"
#include "vrukit/label_map.hpp"

namespace vrukit {

enum class MatchOutcome { kTruePositive, kFalsePositive, kIgnored };

struct DetectionMatch {
  std::size_t detection_index = 0;  // into the caller's detection span
  MatchOutcome outcome = MatchOutcome::kFalsePositive;
  std::optional<std::size_t> gt_index;  // matched GT or overlapped ignore region
  double iou = 0.0;
  double confidence = 0.0;
};

struct FrameMatch {
  std::vector<DetectionMatch> matches;  // in rank order
  std::size_t gt_count = 0;             // non-ignore ground truth
  std::size_t false_negatives = 0;
};

/// Greedy matching for one frame and one class. Detections are visited in
/// rank order; each takes the highest-IoU unmatched non-ignore GT with
/// IoU >= threshold (TP). Failing that, a detection whose IoU with an ignore
/// region reaches the threshold is excluded from scoring; otherwise it is a
/// FP. Unmatched non-ignore GTs are false negatives.
FrameMatch match_detections(std::span<const Detection> detections,
                            std::span<const Annotation> ground_truth,
                            double iou_threshold);

struct ScoredDetection {
  double confidence = 0.0;
  bool true_positive = false;
};

inline constexpr int kRecallSamples = 101;

/// Precision envelope sampled at recall 0.00, 0.01, ..., 1.00. Operating
/// points are taken at each distinct confidence, so equal-confidence
/// detections enter together and the result is independent of input order.
std::vector<double> interpolated_precision(std::span<const ScoredDetection> scored,
                                           std::size_t gt_count);

/// Mean of the 101 interpolated precision samples; nullopt when the class
/// has no ground truth.
std::optional<double> average_precision(std::span<const ScoredDetection> scored,
                                        std::size_t gt_count);

/// COCO-style thresholds lo, lo+step, ..., hi (inclusive, rounded to 1e-9).
std::vector<double> make_iou_thresholds(double lo = 0.50, double hi = 0.95, double step = 0.05);

struct EvalConfig {
  std::vector<std::string> class_names;
  std::vector<double> iou_thresholds = make_iou_thresholds();
  double primary_iou = 0.5;
};

struct ClassEval {
  std::string name;
  std::size_t gt_count = 0;
  std::optional<double> ap50;
  std::optional<double> ap50_95;
  std::vector<double> ap_per_threshold;  // empty when the class has no GT
  // Counts at the pooled max-F1 confidence, IoU primary_iou.
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::vector<double> pr_curve;  // interpolated precision at 101 recall points
};

struct EvalReport {
  std::vector<ClassEval> classes;
  std::vector<double> iou_thresholds;
  std::vector<double> map_per_threshold;
  double map50 = 0.0;
  double map50_95 = 0.0;
  bool map_defined = false;  // some class has ground truth
  // Pooled over classes at the confidence maximizing F1.
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double confidence_threshold = 0.0;
  bool precision_defined = false;  // at least one detection was scored
  bool recall_defined = false;     // at least one GT exists
  std::size_t frame_count = 0;
  std::size_t detection_count = 0;
};

/// Throws ValidationError when detections name frames absent from the ground
/// truth, or when class ids fall outside the configured class set. Ground
/// truth frames without detections count as empty detection sets.
EvalReport evaluate(const DetectionsByFrame& detections,
                    const AnnotationsByFrame& ground_truth, const EvalConfig& config);

nlohmann::ordered_json to_json(const EvalReport& report);
std::string report_to_text(const EvalReport& report);

}  // namespace vrukit

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
#include <span>
#include <string_view>
#include <vector>

namespace vrukit {

enum class Modality { kRgb, kThermal };

std::string_view to_string(Modality modality);
Modality parse_modality(std::string_view text);

/// Axis-aligned box in absolute pixel corners. Half-open semantics: the area
/// is (x_max - x_min) * (y_max - y_min).
struct BoundingBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const noexcept { return x_max - x_min; }
  double height() const noexcept { return y_max - y_min; }
  double area() const noexcept { return width() * height(); }

  /// Finite, non-negative, and ordered corners. Zero area is allowed.
  bool valid() const noexcept;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// YOLO-convention box: center and size as fractions of the image.
struct NormalizedBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const NormalizedBox&, const NormalizedBox&) = default;
};

/// Builds a NormalizedBox, clamping its extent into the unit square.
/// Throws ValidationError when the clamped box has no width or height, or
/// when any input is non-finite.
NormalizedBox make_normalized(double cx, double cy, double w, double h);

struct Detection {
  int class_id = 0;
  BoundingBox box;
  double confidence = 0.0;
  Modality modality = Modality::kRgb;

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// Intersection over union; 0 when the union is empty.
double iou(const BoundingBox& a, const BoundingBox& b) noexcept;

/// Throws ValidationError on non-positive image dimensions or a box that
/// vanishes after clamping to the image.
NormalizedBox to_normalized(const BoundingBox& box, double image_width,
                            double image_height);
BoundingBox from_normalized(const NormalizedBox& box, double image_width,
                            double image_height);

/// Strict weak order used wherever detections are ranked: descending
/// confidence, then ascending (class_id, x_min, y_min, x_max, y_max).
/// Modality does not participate.
bool ranks_before(const Detection& a, const Detection& b) noexcept;

/// Greedy non-maximum suppression. Returns indices into `detections` of
/// the survivors in rank order. A candidate is suppressed when its IoU with
/// an already kept detection exceeds `iou_threshold`; with `class_aware`
/// only same-class pairs interact.
std::vector<std::size_t> nms_indices(std::span<const Detection> detections,
                                     double iou_threshold, bool class_aware);

std::vector<Detection> nms(std::span<const Detection> detections,
                           double iou_threshold, bool class_aware);

}  // namespace vrukit

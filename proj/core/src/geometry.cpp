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

#include "vrukit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "vrukit/error.hpp"

namespace vrukit {

std::string_view to_string(Modality modality) {
  return modality == Modality::kRgb ? "rgb" : "thermal";
}

Modality parse_modality(std::string_view text) {
  if (text == "rgb" || text == "RGB") return Modality::kRgb;
  if (text == "thermal" || text == "tir" || text == "THERMAL" || text == "TIR") {
    return Modality::kThermal;
  }
  throw ConfigError("unknown modality '" + std::string(text) +
                    "' (expected rgb or thermal)");
}

bool BoundingBox::valid() const noexcept {
  return std::isfinite(x_min) && std::isfinite(y_min) && std::isfinite(x_max) &&
         std::isfinite(y_max) && x_min >= 0.0 && y_min >= 0.0 &&
         x_min <= x_max && y_min <= y_max;
}

double iou(const BoundingBox& a, const BoundingBox& b) noexcept {
  const double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

namespace {

constexpr double kEdgeTolerance = 1e-6;

void require_dimensions(double image_width, double image_height) {
  if (!(image_width > 0.0) || !(image_height > 0.0) ||
      !std::isfinite(image_width) || !std::isfinite(image_height)) {
    throw ValidationError("image dimensions must be positive, got " +
                          std::to_string(image_width) + "x" +
                          std::to_string(image_height));
  }
}

// Returns the normalized box spanned by clamped corners.
NormalizedBox from_unit_corners(double x0, double y0, double x1, double y1) {
  x0 = std::clamp(x0, 0.0, 1.0);
  y0 = std::clamp(y0, 0.0, 1.0);
  x1 = std::clamp(x1, 0.0, 1.0);
  y1 = std::clamp(y1, 0.0, 1.0);
  if (!(x1 > x0) || !(y1 > y0)) {
    throw ValidationError("box has no area inside the image");
  }
  return {(x0 + x1) / 2.0, (y0 + y1) / 2.0, x1 - x0, y1 - y0};
}

}  // namespace

NormalizedBox make_normalized(double cx, double cy, double w, double h) {
  if (!std::isfinite(cx) || !std::isfinite(cy) || !std::isfinite(w) ||
      !std::isfinite(h)) {
    throw ValidationError("normalized box fields must be finite");
  }
  const double x0 = cx - w / 2.0;
  const double x1 = cx + w / 2.0;
  const double y0 = cy - h / 2.0;
  const double y1 = cy + h / 2.0;
  // Boxes already inside the unit square keep their exact fields.
  if (w > 0.0 && h > 0.0 && x0 >= -kEdgeTolerance && y0 >= -kEdgeTolerance &&
      x1 <= 1.0 + kEdgeTolerance && y1 <= 1.0 + kEdgeTolerance && cx >= 0.0 &&
      cx <= 1.0 && cy >= 0.0 && cy <= 1.0 && w <= 1.0 && h <= 1.0) {
    return {cx, cy, w, h};
  }
  return from_unit_corners(x0, y0, x1, y1);
}

NormalizedBox to_normalized(const BoundingBox& box, double image_width,
                            double image_height) {
  require_dimensions(image_width, image_height);
  return from_unit_corners(box.x_min / image_width, box.y_min / image_height,
                           box.x_max / image_width, box.y_max / image_height);
}

BoundingBox from_normalized(const NormalizedBox& box, double image_width,
                            double image_height) {
  require_dimensions(image_width, image_height);
  const double x0 = std::clamp(box.cx - box.w / 2.0, 0.0, 1.0);
  const double x1 = std::clamp(box.cx + box.w / 2.0, 0.0, 1.0);
  const double y0 = std::clamp(box.cy - box.h / 2.0, 0.0, 1.0);
  const double y1 = std::clamp(box.cy + box.h / 2.0, 0.0, 1.0);
  return {x0 * image_width, y0 * image_height, x1 * image_width,
          y1 * image_height};
}

bool ranks_before(const Detection& a, const Detection& b) noexcept {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  return std::tie(a.class_id, a.box.x_min, a.box.y_min, a.box.x_max, a.box.y_max) <
         std::tie(b.class_id, b.box.x_min, b.box.y_min, b.box.x_max, b.box.y_max);
}

std::vector<std::size_t> nms_indices(std::span<const Detection> detections,
                                     double iou_threshold, bool class_aware) {
  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ranks_before(detections[a], detections[b]);
  });

  std::vector<std::size_t> kept;
  kept.reserve(order.size());
  for (std::size_t candidate : order) {
    const Detection& d = detections[candidate];
    const bool suppressed =
        std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
          const Detection& s = detections[k];
          if (class_aware && s.class_id != d.class_id) return false;
          return iou(s.box, d.box) > iou_threshold;
        });
    if (!suppressed) kept.push_back(candidate);
  }
  return kept;
}

std::vector<Detection> nms(std::span<const Detection> detections,
                           double iou_threshold, bool class_aware) {
  std::vector<Detection> out;
  for (std::size_t i : nms_indices(detections, iou_threshold, class_aware)) {
    out.push_back(detections[i]);
  }
  return out;
}

}  // namespace vrukit

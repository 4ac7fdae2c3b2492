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

#include "vrukit/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

#include "vrukit/error.hpp"
#include "vrukit/text.hpp"

namespace vrukit {

void validate(const FusionConfig& c) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(c.w_rgb) || !finite(c.w_tir) || c.w_rgb < 0.0 || c.w_tir < 0.0) {
    throw ConfigError("fusion weights must be finite and non-negative");
  }
  if (!(c.w_rgb + c.w_tir > 0.0)) throw ConfigError("fusion weights must not both be zero");
  if (!(c.iou_match_threshold > 0.0 && c.iou_match_threshold < 1.0)) {
    throw ConfigError("iou_match_threshold must be in (0, 1)");
  }
  if (!(c.unmatched_penalty_rgb > 0.0 && c.unmatched_penalty_rgb <= 1.0) ||
      !(c.unmatched_penalty_tir > 0.0 && c.unmatched_penalty_tir <= 1.0)) {
    throw ConfigError("unmatched penalties must be in (0, 1]");
  }
  if (!(c.final_nms_iou > 0.0 && c.final_nms_iou < 1.0)) {
    throw ConfigError("final_nms_iou must be in (0, 1)");
  }
  if (!(c.confidence_floor >= 0.0 && c.confidence_floor < 1.0)) {
    throw ConfigError("confidence_floor must be in [0, 1)");
  }
}

FusionConfig parse_fusion_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("fusion config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("fusion config must be a JSON object");
  FusionConfig c;
  const std::pair<const char*, double*> fields[] = {
      {"w_rgb", &c.w_rgb},
      {"w_tir", &c.w_tir},
      {"iou_match_threshold", &c.iou_match_threshold},
      {"unmatched_penalty_rgb", &c.unmatched_penalty_rgb},
      {"unmatched_penalty_tir", &c.unmatched_penalty_tir},
      {"final_nms_iou", &c.final_nms_iou},
      {"confidence_floor", &c.confidence_floor},
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "box_mode") {
      const std::string mode = value.is_string() ? fold_case(value.get<std::string>()) : "";
      if (mode == "weighted_average" || mode == "weighted") {
        c.box_mode = FusedBoxMode::kWeightedAverage;
      } else if (mode == "keep_best") {
        c.box_mode = FusedBoxMode::kKeepBest;
      } else {
        throw ConfigError("box_mode must be \"weighted_average\" or \"keep_best\"");
      }
      continue;
    }
    const auto it = std::find_if(std::begin(fields), std::end(fields),
                                 [&](const auto& f) { return key == f.first; });
    if (it == std::end(fields)) throw ConfigError("unknown fusion config field '" + key + "'");
    if (!value.is_number()) throw ConfigError("fusion config field '" + key + "' must be a number");
    *it->second = value.get<double>();
  }
  validate(c);
  return c;
}

nlohmann::ordered_json to_json(const FusionConfig& c) {
  return {{"w_rgb", c.w_rgb},
          {"w_tir", c.w_tir},
          {"iou_match_threshold", c.iou_match_threshold},
          {"unmatched_penalty_rgb", c.unmatched_penalty_rgb},
          {"unmatched_penalty_tir", c.unmatched_penalty_tir},
          {"final_nms_iou", c.final_nms_iou},
          {"confidence_floor", c.confidence_floor},
          {"box_mode", c.box_mode == FusedBoxMode::kWeightedAverage ? "weighted_average"
                                                                     : "keep_best"}};
}

std::string_view to_string(Support support) {
  switch (support) {
    case Support::kRgbOnly:
      return "rgb_only";
    case Support::kTirOnly:
      return "tir_only";
    case Support::kBoth:
      return "both";
  }
  return "unknown";
}

std::string_view to_string(FusionFate fate) {
  switch (fate) {
    case FusionFate::kMatchedKept:
      return "matched";
    case FusionFate::kUnmatchedKept:
      return "unmatched_kept";
    case FusionFate::kFloorDropped:
      return "floor_dropped";
    case FusionFate::kNmsSuppressed:
      return "nms_suppressed";
  }
  return "unknown";
}

Detection FusedDetection::as_detection() const {
  return {class_id, box, confidence, Modality::kRgb};
}

namespace {

bool same_rank(const Detection& a, const Detection& b) {
  return !ranks_before(a, b) && !ranks_before(b, a);
}

bool box_less(const BoundingBox& a, const BoundingBox& b) {
  return std::tie(a.x_min, a.y_min, a.x_max, a.y_max) <
         std::tie(b.x_min, b.y_min, b.x_max, b.y_max);
}

struct Candidate {
  double iou;
  std::size_t rgb;
  std::size_t tir;
};

FusedDetection fuse_pair(const Detection& r, const Detection& t, const FusionConfig& cfg) {
  FusedDetection out;
  out.class_id = r.class_id;
  out.support = Support::kBoth;
  out.rgb_confidence = r.confidence;
  out.tir_confidence = t.confidence;

  const double combined =
      (cfg.w_rgb * r.confidence + cfg.w_tir * t.confidence) / (cfg.w_rgb + cfg.w_tir);
  out.confidence = std::clamp(combined, std::min(r.confidence, t.confidence),
                              std::max(r.confidence, t.confidence));

  const double a = cfg.w_rgb * r.confidence;
  const double b = cfg.w_tir * t.confidence;
  if (cfg.box_mode == FusedBoxMode::kKeepBest) {
    if (a != b) {
      out.box = a > b ? r.box : t.box;
    } else {
      out.box = box_less(t.box, r.box) ? t.box : r.box;
    }
  } else if (a + b > 0.0) {
    // Agreeing coordinates pass through exactly; the mean can drift an ulp.
    auto mix = [&](double x, double y) {
      if (x == y) return x;
      return std::clamp((a * x + b * y) / (a + b), std::min(x, y), std::max(x, y));
    };
    out.box = {mix(r.box.x_min, t.box.x_min), mix(r.box.y_min, t.box.y_min),
               mix(r.box.x_max, t.box.x_max), mix(r.box.y_max, t.box.y_max)};
  } else {
    auto mid = [](double x, double y) { return (x + y) / 2.0; };
    out.box = {mid(r.box.x_min, t.box.x_min), mid(r.box.y_min, t.box.y_min),
               mid(r.box.x_max, t.box.x_max), mid(r.box.y_max, t.box.y_max)};
  }
  return out;
}

FusedDetection single(const Detection& d, double penalty, Support support) {
  FusedDetection out;
  out.class_id = d.class_id;
  out.box = d.box;
  out.confidence = d.confidence * penalty;
  out.support = support;
  (support == Support::kRgbOnly ? out.rgb_confidence : out.tir_confidence) = d.confidence;
  return out;
}

std::vector<std::size_t> rank_positions(std::span<const Detection> dets) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ranks_before(dets[a], dets[b]); });
  std::vector<std::size_t> position(dets.size());
  for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = p;
  return position;
}

}  // namespace

FusionResult fuse_frame_audited(std::span<const Detection> rgb, std::span<const Detection> tir,
                                const FusionConfig& config) {
  validate(config);
  const std::vector<std::size_t> rgb_rank = rank_positions(rgb);
  const std::vector<std::size_t> tir_rank = rank_positions(tir);

  std::vector<Candidate> pairs;
  for (std::size_t i = 0; i < rgb.size(); ++i) {
    for (std::size_t j = 0; j < tir.size(); ++j) {
      if (rgb[i].class_id != tir[j].class_id) continue;
      const double v = iou(rgb[i].box, tir[j].box);
      if (v >= config.iou_match_threshold) pairs.push_back({v, i, j});
    }
  }
  // Equal IoU falls back to the pair's detections in rank order, ignoring
  // which modality each came from, so swapping the inputs keeps the order.
  auto pair_less = [&](const Candidate& x, const Candidate& y) {
    if (x.iou != y.iou) return x.iou > y.iou;
    auto ordered = [&](const Candidate& c) {
      const Detection& r = rgb[c.rgb];
      const Detection& t = tir[c.tir];
      return ranks_before(t, r) ? std::pair(&t, &r) : std::pair(&r, &t);
    };
    const auto [x_hi, x_lo] = ordered(x);
    const auto [y_hi, y_lo] = ordered(y);
    if (!same_rank(*x_hi, *y_hi)) return ranks_before(*x_hi, *y_hi);
    if (!same_rank(*x_lo, *y_lo)) return ranks_before(*x_lo, *y_lo);
    return std::tie(rgb_rank[x.rgb], tir_rank[x.tir]) < std::tie(rgb_rank[y.rgb], tir_rank[y.tir]);
  };
  std::sort(pairs.begin(), pairs.end(), pair_less);

  FusionResult result;
  std::vector<std::optional<std::size_t>> rgb_partner(rgb.size());
  std::vector<std::optional<std::size_t>> tir_partner(tir.size());
  std::vector<std::size_t> rgb_candidate(rgb.size());
  std::vector<std::size_t> tir_candidate(tir.size());
  for (const Candidate& p : pairs) {
    if (rgb_partner[p.rgb] || tir_partner[p.tir]) continue;
    rgb_partner[p.rgb] = p.tir;
    tir_partner[p.tir] = p.rgb;
    rgb_candidate[p.rgb] = tir_candidate[p.tir] = result.candidates.size();
    result.candidates.push_back(fuse_pair(rgb[p.rgb], tir[p.tir], config));
  }
  for (std::size_t i = 0; i < rgb.size(); ++i) {
    if (rgb_partner[i]) continue;
    rgb_candidate[i] = result.candidates.size();
    result.candidates.push_back(single(rgb[i], config.unmatched_penalty_rgb, Support::kRgbOnly));
  }
  for (std::size_t j = 0; j < tir.size(); ++j) {
    if (tir_partner[j]) continue;
    tir_candidate[j] = result.candidates.size();
    result.candidates.push_back(single(tir[j], config.unmatched_penalty_tir, Support::kTirOnly));
  }

  std::vector<std::size_t> above_floor;
  std::vector<Detection> nms_input;
  for (std::size_t c = 0; c < result.candidates.size(); ++c) {
    if (result.candidates[c].confidence < config.confidence_floor) continue;
    above_floor.push_back(c);
    nms_input.push_back(result.candidates[c].as_detection());
  }
  std::vector<std::optional<std::size_t>> output_of(result.candidates.size());
  for (std::size_t k : nms_indices(nms_input, config.final_nms_iou, /*class_aware=*/true)) {
    output_of[above_floor[k]] = result.detections.size();
    result.detections.push_back(result.candidates[above_floor[k]]);
  }

  auto audit = [&](Modality modality, std::size_t index, std::optional<std::size_t> partner,
                   std::size_t candidate) {
    AuditEntry e;
    e.modality = modality;
    e.input_index = index;
    e.partner_index = partner;
    e.candidate_index = candidate;
    e.output_index = output_of[candidate];
    if (result.candidates[candidate].confidence < config.confidence_floor) {
      e.fate = FusionFate::kFloorDropped;
    } else if (!e.output_index) {
      e.fate = FusionFate::kNmsSuppressed;
    } else {
      e.fate = partner ? FusionFate::kMatchedKept : FusionFate::kUnmatchedKept;
    }
    result.audit.push_back(e);
  };
  for (std::size_t i = 0; i < rgb.size(); ++i) {
    audit(Modality::kRgb, i, rgb_partner[i], rgb_candidate[i]);
  }
  for (std::size_t j = 0; j < tir.size(); ++j) {
    audit(Modality::kThermal, j, tir_partner[j], tir_candidate[j]);
  }
  return result;
}

std::vector<FusedDetection> fuse_frame(std::span<const Detection> rgb,
                                       std::span<const Detection> tir,
                                       const FusionConfig& config) {
  return fuse_frame_audited(rgb, tir, config).detections;
}

std::vector<FusedFrame> fuse_stream(std::span<const StreamFrame> frames,
                                    const FusionConfig& config) {
  validate(config);
  std::set<std::string> seen;
  for (const StreamFrame& f : frames) {
    if (!seen.insert(f.frame_id).second) {
      throw ValidationError("frame '" + f.frame_id + "' appears more than once in the stream");
    }
  }
  static const std::vector<Detection> kEmpty;
  std::vector<FusedFrame> out;
  out.reserve(frames.size());
  for (const StreamFrame& f : frames) {
    out.push_back({f.frame_id, fuse_frame_audited(f.rgb ? *f.rgb : kEmpty,
                                                  f.tir ? *f.tir : kEmpty, config)});
  }
  return out;
}

std::vector<StreamFrame> pair_streams(const DetectionsByFrame& rgb, const DetectionsByFrame& tir) {
  std::set<std::string> ids;
  for (const auto& [id, dets] : rgb) ids.insert(id);
  for (const auto& [id, dets] : tir) ids.insert(id);
  std::vector<StreamFrame> out;
  for (const std::string& id : ids) {
    StreamFrame f;
    f.frame_id = id;
    if (const auto it = rgb.find(id); it != rgb.end()) f.rgb = it->second;
    if (const auto it = tir.find(id); it != tir.end()) f.tir = it->second;
    out.push_back(std::move(f));
  }
  return out;
}

nlohmann::ordered_json audit_to_json(std::span<const FusedFrame> frames) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const FusedFrame& frame : frames) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const AuditEntry& e : frame.result.audit) {
      const FusedDetection& cand = frame.result.candidates[e.candidate_index];
      entries.push_back(
          {{"modality", std::string(to_string(e.modality))},
           {"input_index", e.input_index},
           {"partner_index", e.partner_index ? nlohmann::ordered_json(*e.partner_index)
                                             : nlohmann::ordered_json(nullptr)},
           {"fate", std::string(to_string(e.fate))},
           {"candidate_confidence", cand.confidence},
           {"output_index", e.output_index ? nlohmann::ordered_json(*e.output_index)
                                           : nlohmann::ordered_json(nullptr)}});
    }
    std::size_t both = 0;
    for (const FusedDetection& d : frame.result.detections) {
      if (d.support == Support::kBoth) ++both;
    }
    out.push_back({{"frame_id", frame.frame_id},
                   {"outputs", frame.result.detections.size()},
                   {"fused_pairs", both},
                   {"decisions", std::move(entries)}});
  }
  return out;
}

}  // namespace vrukit

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

#include "vrukit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "vrukit/error.hpp"

namespace vrukit {

FrameMatch match_detections(std::span<const Detection> detections,
                            std::span<const Annotation> ground_truth, double iou_threshold) {
  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ranks_before(detections[a], detections[b]);
  });

  FrameMatch result;
  std::vector<bool> taken(ground_truth.size(), false);
  for (const Annotation& gt : ground_truth) {
    if (!gt.ignore) ++result.gt_count;
  }

  result.matches.reserve(order.size());
  for (std::size_t di : order) {
    const Detection& det = detections[di];
    DetectionMatch m;
    m.detection_index = di;
    m.confidence = det.confidence;

    std::optional<std::size_t> best;
    double best_iou = -1.0;
    double max_gt_iou = 0.0;
    for (std::size_t j = 0; j < ground_truth.size(); ++j) {
      if (ground_truth[j].ignore) continue;
      const double v = iou(det.box, ground_truth[j].box);
      max_gt_iou = std::max(max_gt_iou, v);
      if (taken[j] || v < iou_threshold) continue;
      if (v > best_iou) {
        best_iou = v;
        best = j;
      }
    }
    if (best) {
      taken[*best] = true;
      m.outcome = MatchOutcome::kTruePositive;
      m.gt_index = best;
      m.iou = best_iou;
      result.matches.push_back(m);
      continue;
    }

    std::optional<std::size_t> region;
    double region_iou = -1.0;
    for (std::size_t j = 0; j < ground_truth.size(); ++j) {
      if (!ground_truth[j].ignore) continue;
      const double v = iou(det.box, ground_truth[j].box);
      if (v >= iou_threshold && v > region_iou) {
        region_iou = v;
        region = j;
      }
    }
    if (region) {
      m.outcome = MatchOutcome::kIgnored;
      m.gt_index = region;
      m.iou = region_iou;
    } else {
      m.outcome = MatchOutcome::kFalsePositive;
      m.iou = max_gt_iou;
    }
    result.matches.push_back(m);
  }

  std::size_t matched = 0;
  for (std::size_t j = 0; j < ground_truth.size(); ++j) {
    if (taken[j]) ++matched;
  }
  result.false_negatives = result.gt_count - matched;
  return result;
}

namespace {

struct OperatingPoint {
  double confidence;
  std::size_t tp;
  std::size_t fp;
};

// Cumulative counts after each distinct confidence, highest first.
std::vector<OperatingPoint> operating_points(std::span<const ScoredDetection> scored) {
  std::vector<ScoredDetection> sorted(scored.begin(), scored.end());
  std::sort(sorted.begin(), sorted.end(), [](const ScoredDetection& a, const ScoredDetection& b) {
    return a.confidence > b.confidence;
  });
  std::vector<OperatingPoint> points;
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    (sorted[i].true_positive ? tp : fp) += 1;
    if (i + 1 == sorted.size() || sorted[i + 1].confidence != sorted[i].confidence) {
      points.push_back({sorted[i].confidence, tp, fp});
    }
  }
  return points;
}

}  // namespace

std::vector<double> interpolated_precision(std::span<const ScoredDetection> scored,
                                           std::size_t gt_count) {
  std::vector<double> samples(kRecallSamples, 0.0);
  if (gt_count == 0) return samples;
  const std::vector<OperatingPoint> points = operating_points(scored);
  if (points.empty()) return samples;

  // Recall is non-decreasing along the points; the envelope at recall r is
  // the best precision among points at or beyond r.
  std::vector<double> envelope(points.size());
  double running = 0.0;
  for (std::size_t i = points.size(); i-- > 0;) {
    const double precision =
        static_cast<double>(points[i].tp) / static_cast<double>(points[i].tp + points[i].fp);
    running = std::max(running, precision);
    envelope[i] = running;
  }
  std::size_t p = 0;
  for (int k = 0; k < kRecallSamples; ++k) {
    // recall >= k/100, compared exactly in integers
    while (p < points.size() &&
           points[p].tp * 100 < static_cast<std::size_t>(k) * gt_count) {
      ++p;
    }
    if (p == points.size()) break;
    samples[static_cast<std::size_t>(k)] = envelope[p];
  }
  return samples;
}

std::optional<double> average_precision(std::span<const ScoredDetection> scored,
                                        std::size_t gt_count) {
  if (gt_count == 0) return std::nullopt;
  const std::vector<double> samples = interpolated_precision(scored, gt_count);
  return std::accumulate(samples.begin(), samples.end(), 0.0) / kRecallSamples;
}

std::vector<double> make_iou_thresholds(double lo, double hi, double step) {
  if (!(lo > 0.0 && hi < 1.0 && lo <= hi && step > 0.0)) {
    throw ConfigError("IoU thresholds need 0 < lo <= hi < 1 and step > 0");
  }
  std::vector<double> out;
  const auto count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) {
    out.push_back(std::round((lo + step * i) * 1e9) / 1e9);
  }
  return out;
}

namespace {

struct ClassSlices {
  // [frame][class] -> detections / ground truth including all ignore regions
  std::vector<std::vector<std::vector<Detection>>> dets;
  std::vector<std::vector<std::vector<Annotation>>> gts;
};

struct ThresholdResult {
  std::vector<std::vector<ScoredDetection>> scored;  // per class
  std::vector<std::size_t> gt_counts;                // per class
};

ThresholdResult score_at(const ClassSlices& slices, std::size_t num_classes, double threshold) {
  ThresholdResult r{std::vector<std::vector<ScoredDetection>>(num_classes),
                    std::vector<std::size_t>(num_classes, 0)};
  for (std::size_t f = 0; f < slices.dets.size(); ++f) {
    for (std::size_t c = 0; c < num_classes; ++c) {
      const FrameMatch m = match_detections(slices.dets[f][c], slices.gts[f][c], threshold);
      r.gt_counts[c] += m.gt_count;
      for (const DetectionMatch& dm : m.matches) {
        if (dm.outcome == MatchOutcome::kIgnored) continue;
        r.scored[c].push_back({dm.confidence, dm.outcome == MatchOutcome::kTruePositive});
      }
    }
  }
  return r;
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

EvalReport evaluate(const DetectionsByFrame& detections, const AnnotationsByFrame& ground_truth,
                    const EvalConfig& config) {
  const std::size_t num_classes = config.class_names.size();
  if (num_classes == 0) throw ConfigError("evaluation needs at least one class");
  if (config.iou_thresholds.empty()) throw ConfigError("evaluation needs IoU thresholds");

  std::vector<std::string> orphans;
  for (const auto& [frame_id, dets] : detections) {
    if (ground_truth.find(frame_id) == ground_truth.end()) orphans.push_back(frame_id);
  }
  if (!orphans.empty()) {
    std::string list;
    for (std::size_t i = 0; i < orphans.size() && i < 10; ++i) {
      list += (i ? ", " : "") + orphans[i];
    }
    if (orphans.size() > 10) list += ", ...";
    throw ValidationError(std::to_string(orphans.size()) +
                          " detection frame(s) have no ground truth: " + list);
  }

  EvalReport report;
  report.frame_count = ground_truth.size();
  ClassSlices slices;
  for (const auto& [frame_id, gts] : ground_truth) {
    auto& frame_dets = slices.dets.emplace_back(num_classes);
    auto& frame_gts = slices.gts.emplace_back(num_classes);
    std::vector<Annotation> ignore_regions;
    for (const Annotation& gt : gts) {
      if (gt.ignore) {
        ignore_regions.push_back(gt);
        continue;
      }
      if (gt.class_id < 0 || static_cast<std::size_t>(gt.class_id) >= num_classes) {
        throw ValidationError("frame '" + frame_id + "': ground-truth class id " +
                              std::to_string(gt.class_id) + " outside the class set");
      }
      frame_gts[static_cast<std::size_t>(gt.class_id)].push_back(gt);
    }
    for (auto& slice : frame_gts) {
      slice.insert(slice.end(), ignore_regions.begin(), ignore_regions.end());
    }
    if (const auto it = detections.find(frame_id); it != detections.end()) {
      for (const Detection& d : it->second) {
        if (d.class_id < 0 || static_cast<std::size_t>(d.class_id) >= num_classes) {
          throw ValidationError("frame '" + frame_id + "': detection class id " +
                                std::to_string(d.class_id) + " outside the class set");
        }
        frame_dets[static_cast<std::size_t>(d.class_id)].push_back(d);
        ++report.detection_count;
      }
    }
  }

  report.iou_thresholds = config.iou_thresholds;
  std::vector<ThresholdResult> per_threshold;
  per_threshold.reserve(config.iou_thresholds.size());
  for (double t : config.iou_thresholds) per_threshold.push_back(score_at(slices, num_classes, t));

  const auto primary_it =
      std::find_if(config.iou_thresholds.begin(), config.iou_thresholds.end(),
                   [&](double t) { return std::abs(t - config.primary_iou) < 1e-12; });
  const ThresholdResult primary =
      primary_it != config.iou_thresholds.end()
          ? per_threshold[static_cast<std::size_t>(primary_it - config.iou_thresholds.begin())]
          : score_at(slices, num_classes, config.primary_iou);

  std::vector<double> ap50s;
  std::vector<double> ap50_95s;
  report.map_per_threshold.assign(config.iou_thresholds.size(), 0.0);
  std::vector<std::size_t> classes_with_gt_per_t(config.iou_thresholds.size(), 0);
  for (std::size_t c = 0; c < num_classes; ++c) {
    ClassEval ce;
    ce.name = config.class_names[c];
    ce.gt_count = primary.gt_counts[c];
    ce.pr_curve = interpolated_precision(primary.scored[c], ce.gt_count);
    ce.ap50 = average_precision(primary.scored[c], ce.gt_count);
    if (ce.ap50) {
      for (std::size_t t = 0; t < per_threshold.size(); ++t) {
        const double ap =
            *average_precision(per_threshold[t].scored[c], per_threshold[t].gt_counts[c]);
        ce.ap_per_threshold.push_back(ap);
        report.map_per_threshold[t] += ap;
        ++classes_with_gt_per_t[t];
      }
      ce.ap50_95 = mean_of(ce.ap_per_threshold);
      ap50s.push_back(*ce.ap50);
      ap50_95s.push_back(*ce.ap50_95);
    }
    report.classes.push_back(std::move(ce));
  }
  for (std::size_t t = 0; t < report.map_per_threshold.size(); ++t) {
    if (classes_with_gt_per_t[t] > 0) {
      report.map_per_threshold[t] /= static_cast<double>(classes_with_gt_per_t[t]);
    }
  }
  report.map_defined = !ap50s.empty();
  report.map50 = mean_of(ap50s);
  report.map50_95 = mean_of(ap50_95s);

  // Pooled operating point maximizing F1.
  std::vector<ScoredDetection> pooled;
  std::size_t total_gt = 0;
  for (std::size_t c = 0; c < num_classes; ++c) {
    pooled.insert(pooled.end(), primary.scored[c].begin(), primary.scored[c].end());
    total_gt += primary.gt_counts[c];
  }
  report.recall_defined = total_gt > 0;
  report.precision_defined = !pooled.empty();
  const std::vector<OperatingPoint> points = operating_points(pooled);
  double best_f1 = -1.0;
  for (const OperatingPoint& pt : points) {
    const double precision = static_cast<double>(pt.tp) / static_cast<double>(pt.tp + pt.fp);
    const double recall =
        total_gt > 0 ? static_cast<double>(pt.tp) / static_cast<double>(total_gt) : 0.0;
    const double f1 =
        precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    if (f1 > best_f1) {
      best_f1 = f1;
      report.precision = precision;
      report.recall = recall;
      report.f1 = f1;
      report.confidence_threshold = pt.confidence;
    }
  }

  for (std::size_t c = 0; c < num_classes; ++c) {
    ClassEval& ce = report.classes[c];
    if (report.precision_defined) {
      for (const ScoredDetection& s : primary.scored[c]) {
        if (s.confidence < report.confidence_threshold) continue;
        (s.true_positive ? ce.true_positives : ce.false_positives) += 1;
      }
    }
    ce.false_negatives = ce.gt_count - ce.true_positives;
  }
  return report;
}

namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

nlohmann::ordered_json to_json(const EvalReport& report) {
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const ClassEval& ce : report.classes) {
    classes.push_back({{"name", ce.name},
                       {"gt", ce.gt_count},
                       {"ap50", optional_number(ce.ap50)},
                       {"ap50_95", optional_number(ce.ap50_95)},
                       {"ap_per_threshold", ce.ap_per_threshold},
                       {"tp", ce.true_positives},
                       {"fp", ce.false_positives},
                       {"fn", ce.false_negatives},
                       {"pr_curve", ce.pr_curve}});
  }
  nlohmann::ordered_json metrics = {{"precision", report.precision},
                                    {"recall", report.recall},
                                    {"mAP50", report.map50},
                                    {"mAP50_95", report.map50_95},
                                    {"f1", report.f1},
                                    {"confidence_threshold", report.confidence_threshold},
                                    {"precision_defined", report.precision_defined},
                                    {"recall_defined", report.recall_defined},
                                    {"map_defined", report.map_defined}};
  return {{"metrics", std::move(metrics)},
          {"frames", report.frame_count},
          {"detections", report.detection_count},
          {"iou_thresholds", report.iou_thresholds},
          {"map_per_threshold", report.map_per_threshold},
          {"classes", std::move(classes)}};
}

std::string report_to_text(const EvalReport& report) {
  std::vector<std::vector<std::string>> rows = {
      {"Class", "GT", "Precision", "Recall", "mAP50", "mAP50:95"}};
  std::size_t total_gt = 0;
  for (const ClassEval& ce : report.classes) {
    total_gt += ce.gt_count;
    const std::size_t predicted = ce.true_positives + ce.false_positives;
    rows.push_back(
        {ce.name, std::to_string(ce.gt_count),
         predicted > 0 ? fixed3(static_cast<double>(ce.true_positives) / predicted) : "-",
         ce.gt_count > 0 ? fixed3(static_cast<double>(ce.true_positives) / ce.gt_count) : "-",
         ce.ap50 ? fixed3(*ce.ap50) : "-", ce.ap50_95 ? fixed3(*ce.ap50_95) : "-"});
  }
  rows.insert(rows.begin() + 1,
              {"all", std::to_string(total_gt),
               report.precision_defined ? fixed3(report.precision) : "-",
               report.recall_defined ? fixed3(report.recall) : "-",
               report.map_defined ? fixed3(report.map50) : "-",
               report.map_defined ? fixed3(report.map50_95) : "-"});

  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == 0) {
        out << row[i] << std::string(widths[i] - row[i].size(), ' ');
      } else {
        out << "  " << std::string(widths[i] - row[i].size(), ' ') << row[i];
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace vrukit

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

#include "vrukit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "vrukit/error.hpp"
#include "vrukit/text.hpp"

namespace vrukit {

std::uint64_t ClassHistogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

ClassHistogram& ClassHistogram::operator+=(const ClassHistogram& other) {
  if (other.class_names != class_names) {
    throw ValidationError("cannot merge histograms over different class sets");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  dont_care += other.dont_care;
  return *this;
}

ClassHistogram make_histogram(std::span<const std::string> class_names, Split split,
                              Modality modality) {
  ClassHistogram h;
  h.class_names.assign(class_names.begin(), class_names.end());
  h.counts.assign(class_names.size(), 0);
  h.split = split;
  h.modality = modality;
  return h;
}

ClassHistogram count_instances(std::span<const Annotation> annotations,
                               std::span<const std::string> class_names, Split split,
                               Modality modality) {
  ClassHistogram h = make_histogram(class_names, split, modality);
  for (const Annotation& anno : annotations) {
    if (anno.ignore) {
      ++h.dont_care;
      continue;
    }
    if (anno.class_id < 0 || static_cast<std::size_t>(anno.class_id) >= h.counts.size()) {
      throw ValidationError("class id " + std::to_string(anno.class_id) + " in frame '" +
                            anno.frame_id + "' is outside the class set");
    }
    ++h.counts[static_cast<std::size_t>(anno.class_id)];
  }
  return h;
}

std::string_view to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::kInverseFrequency:
      return "inverse_freq";
    case WeightScheme::kInverseSqrt:
      return "inverse_sqrt";
    case WeightScheme::kUniform:
      return "uniform";
  }
  return "unknown";
}

WeightScheme parse_weight_scheme(std::string_view text) {
  const std::string folded = fold_case(trim(text));
  if (folded == "inverse_freq" || folded == "inverse-freq" || folded == "inverse_frequency") {
    return WeightScheme::kInverseFrequency;
  }
  if (folded == "inverse_sqrt" || folded == "inverse-sqrt") return WeightScheme::kInverseSqrt;
  if (folded == "uniform") return WeightScheme::kUniform;
  throw ConfigError("unknown weight scheme '" + std::string(text) + "'");
}

ClassWeights compute_class_weights(const ClassHistogram& histogram, WeightScheme scheme,
                                   double cap, std::uint64_t count_floor) {
  if (!(cap >= 1.0) || !std::isfinite(cap)) throw ConfigError("weight cap must be >= 1");
  if (count_floor < 1) throw ConfigError("count floor must be >= 1");

  const std::size_t k_classes = histogram.counts.size();
  std::vector<std::size_t> nonzero;
  for (std::size_t c = 0; c < k_classes; ++c) {
    if (histogram.counts[c] > 0) nonzero.push_back(c);
  }
  if (nonzero.empty()) {
    throw ValidationError("cannot compute class weights: every class count is zero");
  }

  ClassWeights out;
  out.class_names = histogram.class_names;
  out.scheme = scheme;
  out.cap = cap;
  if (scheme == WeightScheme::kUniform) {
    out.weights.assign(k_classes, 1.0);
    return out;
  }

  const double total = static_cast<double>(histogram.total());
  const double k_nonzero = static_cast<double>(nonzero.size());
  std::vector<double> clipped(k_classes, cap);
  for (std::size_t c : nonzero) {
    const double n = static_cast<double>(std::max(histogram.counts[c], count_floor));
    double raw = total / (k_nonzero * n);
    if (scheme == WeightScheme::kInverseSqrt) raw = std::sqrt(raw);
    clipped[c] = std::min(raw, cap);
  }

  // Rescale to mean 1, pinning to the cap anything the rescale pushes past it.
  std::vector<bool> pinned(k_classes, false);
  double scale = 1.0;
  for (;;) {
    double free_sum = 0.0;
    double pinned_count = 0.0;
    for (std::size_t c : nonzero) {
      if (pinned[c]) {
        pinned_count += 1.0;
      } else {
        free_sum += clipped[c];
      }
    }
    if (free_sum <= 0.0) break;  // all pinned: only reachable when cap == 1
    scale = (k_nonzero - cap * pinned_count) / free_sum;
    bool changed = false;
    for (std::size_t c : nonzero) {
      if (!pinned[c] && scale * clipped[c] > cap) {
        pinned[c] = true;
        changed = true;
      }
    }
    if (!changed) break;
  }

  out.weights.assign(k_classes, cap);
  for (std::size_t c : nonzero) {
    out.weights[c] = pinned[c] ? cap : scale * clipped[c];
  }
  return out;
}

namespace {

int modality_rank(Modality m) { return m == Modality::kRgb ? 0 : 1; }

std::string display_name(Modality m) { return m == Modality::kRgb ? "RGB" : "Thermal"; }

std::string display_name(Split s) {
  switch (s) {
    case Split::kTrain:
      return "Train";
    case Split::kVal:
      return "Val";
    case Split::kTest:
      return "Test";
  }
  return "?";
}

std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", w);
  return buf;
}

}  // namespace

SummaryTable dataset_summary(std::span<const DatasetIndex> indexes) {
  std::map<std::tuple<int, Split>, SummaryRow> by_key;
  SummaryTable table;
  for (const DatasetIndex& index : indexes) {
    SummaryRow& row = by_key[{modality_rank(index.modality), index.split}];
    row.split = index.split;
    row.modality = index.modality;
    row.images += index.image_count;
    row.labels += index.label_file_count;
    table.total_images += index.image_count;
    table.total_labels += index.label_file_count;
  }
  for (const auto& [key, row] : by_key) table.rows.push_back(row);
  return table;
}

std::string SummaryTable::to_csv() const {
  std::ostringstream out;
  out << "dataset,images,labels\n";
  for (const SummaryRow& row : rows) {
    out << display_name(row.modality) << ' ' << display_name(row.split) << ',' << row.images
        << ',' << row.labels << '\n';
  }
  if (!rows.empty()) out << "Total," << total_images << ',' << total_labels << '\n';
  return out.str();
}

std::string SummaryTable::to_text() const {
  std::vector<std::vector<std::string>> cells = {{"Dataset", "Images", "Labels"}};
  for (const SummaryRow& row : rows) {
    cells.push_back({display_name(row.modality) + " " + display_name(row.split),
                     std::to_string(row.images), std::to_string(row.labels)});
  }
  if (!rows.empty()) {
    cells.push_back({"Total", std::to_string(total_images), std::to_string(total_labels)});
  }
  return render_table(cells);
}

std::string emit_experiment_manifest(const ExperimentConfig& config) {
  if (config.resolution <= 0) {
    throw ValidationError("resolution must be positive, got " + std::to_string(config.resolution));
  }
  if (config.freeze_layers < 0 || config.freeze_layers > 10) {
    throw ValidationError("freeze_layers must be in [0, 10], got " +
                          std::to_string(config.freeze_layers));
  }
  if (config.batch <= 0) throw ValidationError("batch must be positive");
  if (config.epochs <= 0) throw ValidationError("epochs must be positive");
  if (config.patience < 0) throw ValidationError("patience must be non-negative");

  const std::string filter = fold_case(config.class_filter);
  static const char* const kFilters[] = {"full", "seven_class", "four_class", "custom"};
  if (std::none_of(std::begin(kFilters), std::end(kFilters),
                   [&](const char* f) { return filter == f; })) {
    throw ValidationError("unknown class_filter '" + config.class_filter + "'");
  }
  const std::string level = fold_case(config.augmentation_level);
  static const char* const kLevels[] = {"none", "light", "heavy", "custom"};
  if (std::none_of(std::begin(kLevels), std::end(kLevels),
                   [&](const char* l) { return level == l; })) {
    throw ValidationError("unknown augmentation_level '" + config.augmentation_level + "'");
  }

  nlohmann::ordered_json doc;
  doc["resolution"] = config.resolution;
  doc["freeze_layers"] = config.freeze_layers;
  doc["batch"] = config.batch;
  doc["epochs"] = config.epochs;
  doc["patience"] = config.patience;
  std::string upper_filter = filter;
  for (char& ch : upper_filter) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  doc["class_filter"] = upper_filter;
  doc["weights_file"] = config.weights_file ? nlohmann::ordered_json(*config.weights_file)
                                            : nlohmann::ordered_json(nullptr);
  doc["augmentation_level"] = level;
  return doc.dump(2) + "\n";
}

nlohmann::ordered_json to_json(const ClassHistogram& histogram) {
  nlohmann::ordered_json doc;
  doc["split"] = std::string(to_string(histogram.split));
  doc["modality"] = std::string(to_string(histogram.modality));
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < histogram.class_names.size(); ++i) {
    classes[histogram.class_names[i]] = histogram.counts[i];
  }
  doc["classes"] = std::move(classes);
  doc["dont_care"] = histogram.dont_care;
  doc["total"] = histogram.total();
  return doc;
}

ClassHistogram histogram_from_json(std::string_view json_text) {
  try {
    const auto doc = nlohmann::ordered_json::parse(json_text.begin(), json_text.end());
    ClassHistogram h;
    h.split = parse_split(doc.at("split").get<std::string>());
    h.modality = parse_modality(doc.at("modality").get<std::string>());
    for (const auto& [name, count] : doc.at("classes").items()) {
      h.class_names.push_back(name);
      h.counts.push_back(count.get<std::uint64_t>());
    }
    h.dont_care = doc.value("dont_care", std::uint64_t{0});
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed histogram JSON: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const ClassWeights& weights) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < weights.class_names.size(); ++i) {
    doc[weights.class_names[i]] = weights.weights[i];
  }
  return doc;
}

nlohmann::ordered_json to_json(const SummaryTable& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SummaryRow& row : table.rows) {
    rows.push_back({{"modality", std::string(to_string(row.modality))},
                    {"split", std::string(to_string(row.split))},
                    {"images", row.images},
                    {"labels", row.labels}});
  }
  return {{"rows", rows},
          {"total", {{"images", table.total_images}, {"labels", table.total_labels}}}};
}

std::string histogram_to_text(const ClassHistogram& histogram) {
  std::vector<std::vector<std::string>> cells = {
      {"Class", display_name(histogram.modality) + " " + display_name(histogram.split)}};
  for (std::size_t i = 0; i < histogram.class_names.size(); ++i) {
    cells.push_back({histogram.class_names[i], std::to_string(histogram.counts[i])});
  }
  cells.push_back({std::string(kDontCareName), std::to_string(histogram.dont_care)});
  return render_table(cells);
}

std::string weights_to_text(const ClassWeights& weights) {
  std::vector<std::vector<std::string>> cells = {{"Class", "Weight"}};
  for (std::size_t i = 0; i < weights.class_names.size(); ++i) {
    cells.push_back({weights.class_names[i], format_weight(weights.weights[i])});
  }
  return render_table(cells);
}

}  // namespace vrukit

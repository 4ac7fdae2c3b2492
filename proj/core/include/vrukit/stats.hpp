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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vrukit/label_map.hpp"
#include "vrukit/scan.hpp"

namespace vrukit {

/// Per-class instance counts for one split of one modality. Ignore
/// annotations land in `dont_care` and are not part of `total()`.
struct ClassHistogram {
  std::vector<std::string> class_names;
  std::vector<std::uint64_t> counts;  // parallel to class_names
  std::uint64_t dont_care = 0;
  Split split = Split::kTrain;
  Modality modality = Modality::kRgb;

  std::uint64_t total() const noexcept;

  /// Elementwise sum. Throws ValidationError when class sets differ.
  ClassHistogram& operator+=(const ClassHistogram& other);
};

ClassHistogram make_histogram(std::span<const std::string> class_names,
                              Split split = Split::kTrain,
                              Modality modality = Modality::kRgb);

/// Throws ValidationError for a non-ignore annotation whose class id falls
/// outside `class_names`.
ClassHistogram count_instances(std::span<const Annotation> annotations,
                               std::span<const std::string> class_names,
                               Split split = Split::kTrain,
                               Modality modality = Modality::kRgb);

enum class WeightScheme { kInverseFrequency, kInverseSqrt, kUniform };

std::string_view to_string(WeightScheme scheme);
WeightScheme parse_weight_scheme(std::string_view text);

struct ClassWeights {
  std::vector<std::string> class_names;
  std::vector<double> weights;  // parallel to class_names
  WeightScheme scheme = WeightScheme::kInverseFrequency;
  double cap = 10.0;
};

inline constexpr double kDefaultWeightCap = 10.0;
inline constexpr std::uint64_t kDefaultCountFloor = 1;

/// Inverse-frequency style loss weights.
///
/// For classes with a nonzero count n_c, the raw weight is
/// N / (K * max(n_c, count_floor)) (square-rooted for kInverseSqrt), where N
/// is the total count and K the number of nonzero classes. Raw weights are
/// clipped to `cap` and rescaled so their mean over nonzero classes is 1;
/// when rescaling would push a weight past the cap, that weight is pinned to
/// the cap and the rest are rescaled again. Zero-count classes receive `cap`.
///
/// Throws ConfigError when cap < 1 or count_floor < 1, ValidationError when
/// every count is zero.
ClassWeights compute_class_weights(const ClassHistogram& histogram,
                                   WeightScheme scheme = WeightScheme::kInverseFrequency,
                                   double cap = kDefaultWeightCap,
                                   std::uint64_t count_floor = kDefaultCountFloor);

struct SummaryRow {
  Split split = Split::kTrain;
  Modality modality = Modality::kRgb;
  std::uint64_t images = 0;
  std::uint64_t labels = 0;
};

struct SummaryTable {
  std::vector<SummaryRow> rows;  // ordered by (modality, split)
  std::uint64_t total_images = 0;
  std::uint64_t total_labels = 0;

  std::string to_csv() const;
  std::string to_text() const;
};

/// Image / label-file counts per (split, modality), merging indexes that
/// share a key.
SummaryTable dataset_summary(std::span<const DatasetIndex> indexes);

struct ExperimentConfig {
  int resolution = 640;
  int freeze_layers = 6;
  int batch = 4;
  int epochs = 100;
  int patience = 50;
  std::string class_filter = "SEVEN_CLASS";
  std::optional<std::string> weights_file;
  std::string augmentation_level = "none";
};

/// Pretty-printed JSON manifest for an external trainer. Throws
/// ValidationError on out-of-range parameters.
std::string emit_experiment_manifest(const ExperimentConfig& config);

nlohmann::ordered_json to_json(const ClassHistogram& histogram);
/// Inverse of to_json(ClassHistogram); class order follows the document.
ClassHistogram histogram_from_json(std::string_view json_text);
/// Weights file layout: {"class_name": weight, ...}.
nlohmann::ordered_json to_json(const ClassWeights& weights);
nlohmann::ordered_json to_json(const SummaryTable& table);

std::string histogram_to_text(const ClassHistogram& histogram);
std::string weights_to_text(const ClassWeights& weights);

}  // namespace vrukit

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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vrukit/geometry.hpp"
#include "vrukit/ingest.hpp"

namespace vrukit {

/// Class id carried by ignore ("don't care") regions.
inline constexpr int kIgnoreClassId = -1;
inline constexpr std::string_view kDontCareName = "Don't care";

/// Ground truth after mapping onto the unified class set.
struct Annotation {
  int class_id = 0;  // kIgnoreClassId when `ignore` is set
  BoundingBox box;
  bool ignore = false;
  SourceDataset source_dataset = SourceDataset::kYolo;
  std::string frame_id;
  Modality modality = Modality::kRgb;
};

struct MapTarget {
  enum class Kind { kClass, kIgnore, kDrop };

  Kind kind = Kind::kDrop;
  int class_id = kIgnoreClassId;

  static MapTarget to_class(int id) { return {Kind::kClass, id}; }
  static MapTarget ignore() { return {Kind::kIgnore, kIgnoreClassId}; }
  static MapTarget drop() { return {Kind::kDrop, kIgnoreClassId}; }

  friend bool operator==(const MapTarget&, const MapTarget&) = default;
};

/// Mapping from (source dataset, source class) to a unified target. Keys are
/// compared after trimming and case folding.
class LabelMap {
 public:
  explicit LabelMap(std::vector<std::string> class_names);

  const std::vector<std::string>& class_names() const noexcept { return class_names_; }

  /// Index of a unified class name (case-folded), if present.
  std::optional<int> class_index(std::string_view name) const;

  /// Inserts or replaces the entry for (dataset, source_class).
  void set(SourceDataset dataset, std::string_view source_class, MapTarget target);

  /// Unknown classes from `dataset` map to Drop instead of failing.
  void set_wildcard_drop(SourceDataset dataset, bool enabled);
  bool wildcard_drop(SourceDataset dataset) const;

  std::optional<MapTarget> lookup(SourceDataset dataset, std::string_view source_class) const;

  using Key = std::pair<SourceDataset, std::string>;
  const std::map<Key, MapTarget>& entries() const noexcept { return entries_; }

  /// Maps every unified class name to itself for every dataset.
  static LabelMap identity(std::vector<std::string> class_names);

 private:
  std::vector<std::string> class_names_;
  std::map<Key, MapTarget> entries_;
  std::vector<SourceDataset> wildcard_drop_;
};

/// Unified classes in id order.
const std::vector<std::string>& default_class_names();

/// The KITTI / BDD100K / FLIR unification table. "Don't care" rows map to
/// Ignore.
LabelMap default_label_map();

/// Applies a JSON override document of the form
/// {"kitti": {"Tram": "Car", "*": "Drop"}, ...} on top of `base`.
/// Targets are "Ignore", "Drop" or a unified class name. Throws ConfigError.
LabelMap apply_label_map_overrides(LabelMap base, std::string_view json_text);

struct SourceClassTally {
  SourceDataset dataset = SourceDataset::kKitti;
  std::string source_class;  // folded key
  std::size_t input = 0;
  std::size_t mapped = 0;
  std::size_t ignored = 0;
  std::size_t dropped = 0;
};

struct MappingResult {
  std::vector<Annotation> annotations;
  std::vector<SourceClassTally> tallies;  // sorted by (dataset, class)

  std::size_t dropped_total() const noexcept;
};

/// Throws ValidationError naming dataset, class and frame for the first
/// unmapped class; no partial output is returned in that case.
MappingResult apply_label_map(std::span<const SourceAnnotation> annotations,
                              const LabelMap& map);

enum class FilterKind { kFull, kSevenClass, kFourClass, kCustom };

struct ClassFilter {
  FilterKind kind = FilterKind::kFull;
  std::vector<std::string> kept;  // in dense output order

  static ClassFilter full(std::span<const std::string> class_names);
  static ClassFilter seven_class();
  static ClassFilter four_class();
  static ClassFilter custom(std::vector<std::string> kept);
};

std::string_view to_string(FilterKind kind);

/// "full", "seven", "four" (or 7class/4class spellings), or
/// "custom:Name,Name,...".
ClassFilter parse_class_filter(std::string_view text,
                               std::span<const std::string> class_names);

struct FilterResult {
  std::vector<Annotation> annotations;
  std::vector<std::string> class_names;  // dense, in kept order
  std::vector<int> remap;                // old id -> new id or -1
  std::size_t removed = 0;
};

/// Keeps annotations whose class is in the filter, re-indexed densely in kept
/// order. Ignore annotations always pass. Throws ConfigError for an empty or
/// unknown kept set.
FilterResult apply_class_filter(std::span<const Annotation> annotations,
                                const ClassFilter& filter,
                                std::span<const std::string> class_names);

}  // namespace vrukit

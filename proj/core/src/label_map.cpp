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

#include "vrukit/label_map.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "vrukit/error.hpp"
#include "vrukit/text.hpp"

namespace vrukit {

namespace {
std::string key_of(std::string_view source_class) { return fold_case(trim(source_class)); }
}  // namespace

LabelMap::LabelMap(std::vector<std::string> class_names)
    : class_names_(std::move(class_names)) {
  std::set<std::string> seen;
  for (const std::string& name : class_names_) {
    if (trim(name).empty()) throw ConfigError("unified class names must be non-empty");
    if (!seen.insert(key_of(name)).second) {
      throw ConfigError("duplicate unified class name '" + name + "'");
    }
  }
}

std::optional<int> LabelMap::class_index(std::string_view name) const {
  const std::string key = key_of(name);
  for (std::size_t i = 0; i < class_names_.size(); ++i) {
    if (key_of(class_names_[i]) == key) return static_cast<int>(i);
  }
  return std::nullopt;
}

void LabelMap::set(SourceDataset dataset, std::string_view source_class, MapTarget target) {
  if (target.kind == MapTarget::Kind::kClass &&
      (target.class_id < 0 || target.class_id >= static_cast<int>(class_names_.size()))) {
    throw ConfigError("label map target id " + std::to_string(target.class_id) +
                      " is outside the unified class set");
  }
  entries_[{dataset, key_of(source_class)}] = target;
}

void LabelMap::set_wildcard_drop(SourceDataset dataset, bool enabled) {
  const auto it = std::find(wildcard_drop_.begin(), wildcard_drop_.end(), dataset);
  if (enabled && it == wildcard_drop_.end()) wildcard_drop_.push_back(dataset);
  if (!enabled && it != wildcard_drop_.end()) wildcard_drop_.erase(it);
}

bool LabelMap::wildcard_drop(SourceDataset dataset) const {
  return std::find(wildcard_drop_.begin(), wildcard_drop_.end(), dataset) !=
         wildcard_drop_.end();
}

std::optional<MapTarget> LabelMap::lookup(SourceDataset dataset,
                                          std::string_view source_class) const {
  if (const auto it = entries_.find({dataset, key_of(source_class)}); it != entries_.end()) {
    return it->second;
  }
  if (wildcard_drop(dataset)) return MapTarget::drop();
  return std::nullopt;
}

LabelMap LabelMap::identity(std::vector<std::string> class_names) {
  LabelMap map(std::move(class_names));
  for (SourceDataset dataset : {SourceDataset::kKitti, SourceDataset::kBdd100k,
                                SourceDataset::kFlir, SourceDataset::kYolo}) {
    for (std::size_t i = 0; i < map.class_names_.size(); ++i) {
      map.set(dataset, map.class_names_[i], MapTarget::to_class(static_cast<int>(i)));
    }
  }
  return map;
}

const std::vector<std::string>& default_class_names() {
  static const std::vector<std::string> names = {
      "Car", "Pedestrian", "Cyclist", "Bus", "Truck",
      "Animal", "Motorcycle", "Scooter", "OtherVehicle"};
  return names;
}

LabelMap default_label_map() {
  LabelMap map(default_class_names());
  auto id = [&](std::string_view name) { return MapTarget::to_class(*map.class_index(name)); };
  const MapTarget ignore = MapTarget::ignore();

  using enum SourceDataset;
  struct Row {
    SourceDataset dataset;
    std::string_view source;
    std::string_view target;  // empty means Ignore
  };
  static constexpr Row kRows[] = {
      // KITTI
      {kKitti, "Car", "Car"},
      {kKitti, "Van", "Car"},
      {kKitti, "Pedestrian", "Pedestrian"},
      {kKitti, "Person_sitting", "Pedestrian"},
      {kKitti, "Cyclist", "Cyclist"},
      {kKitti, "Bus", "Bus"},
      {kKitti, "Truck", "Truck"},
      {kKitti, "Animal", "Animal"},
      {kKitti, "Motorcycle", "Motorcycle"},
      {kKitti, "Scooter", "Scooter"},
      {kKitti, "Tram", "OtherVehicle"},
      {kKitti, "Misc", "OtherVehicle"},
      {kKitti, "Don't care", ""},
      {kKitti, "DontCare", ""},
      // BDD100K; the 2020 release renamed person/bike/motor.
      {kBdd100k, "Car", "Car"},
      {kBdd100k, "Person", "Pedestrian"},
      {kBdd100k, "pedestrian", "Pedestrian"},
      {kBdd100k, "rider", "Pedestrian"},
      {kBdd100k, "Bike", "Cyclist"},
      {kBdd100k, "bicycle", "Cyclist"},
      {kBdd100k, "Bus", "Bus"},
      {kBdd100k, "truck", "Truck"},
      {kBdd100k, "Motor", "Motorcycle"},
      {kBdd100k, "motorcycle", "Motorcycle"},
      {kBdd100k, "Train", "OtherVehicle"},
      {kBdd100k, "traffic sign", ""},
      {kBdd100k, "traffig sign", ""},
      {kBdd100k, "traffic light", ""},
      // Teledyne FLIR
      {kFlir, "Car", "Car"},
      {kFlir, "Person", "Pedestrian"},
      {kFlir, "people", "Pedestrian"},
      {kFlir, "stroller", "Pedestrian"},
      {kFlir, "Bike", "Cyclist"},
      {kFlir, "Bus", "Bus"},
      {kFlir, "truck", "Truck"},
      {kFlir, "Dog", "Animal"},
      {kFlir, "Motor", "Motorcycle"},
      {kFlir, "Scooter", "Scooter"},
      {kFlir, "Train", "OtherVehicle"},
      {kFlir, "other vehicle", "OtherVehicle"},
      {kFlir, "Skateboard", ""},
      {kFlir, "light", ""},
      {kFlir, "hydrant", ""},
      {kFlir, "sign", ""},
  };
  for (const Row& row : kRows) {
    map.set(row.dataset, row.source, row.target.empty() ? ignore : id(row.target));
  }
  return map;
}

LabelMap apply_label_map_overrides(LabelMap base, std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("label map override is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("label map override must be a JSON object");
  for (const auto& [dataset_name, classes] : doc.items()) {
    SourceDataset dataset;
    try {
      dataset = parse_source_dataset(dataset_name);
    } catch (const Error&) {
      throw ConfigError("label map override names unknown dataset '" + dataset_name + "'");
    }
    if (!classes.is_object()) {
      throw ConfigError("label map override for '" + dataset_name + "' must be an object");
    }
    for (const auto& [source_class, target_json] : classes.items()) {
      if (!target_json.is_string()) {
        throw ConfigError("target for '" + source_class + "' must be a string");
      }
      const std::string target = target_json.get<std::string>();
      const std::string folded = fold_case(trim(target));
      if (source_class == "*") {
        if (folded != "drop") throw ConfigError("the '*' wildcard only accepts \"Drop\"");
        base.set_wildcard_drop(dataset, true);
        continue;
      }
      if (folded == "drop") {
        base.set(dataset, source_class, MapTarget::drop());
      } else if (folded == "ignore" || folded == "don't care" || folded == "dontcare") {
        base.set(dataset, source_class, MapTarget::ignore());
      } else if (const auto idx = base.class_index(target)) {
        base.set(dataset, source_class, MapTarget::to_class(*idx));
      } else {
        throw ConfigError("label map override target '" + target +
                          "' is not Ignore, Drop, or a unified class");
      }
    }
  }
  return base;
}

std::size_t MappingResult::dropped_total() const noexcept {
  std::size_t total = 0;
  for (const auto& t : tallies) total += t.dropped;
  return total;
}

MappingResult apply_label_map(std::span<const SourceAnnotation> annotations,
                              const LabelMap& map) {
  MappingResult result;
  result.annotations.reserve(annotations.size());
  std::map<LabelMap::Key, SourceClassTally> tallies;
  for (const SourceAnnotation& src : annotations) {
    const auto target = map.lookup(src.source_dataset, src.source_class);
    if (!target) {
      throw ValidationError("unmapped class '" + src.source_class + "' from " +
                            std::string(to_string(src.source_dataset)) + " in frame '" +
                            src.frame_id + "'");
    }
    LabelMap::Key key{src.source_dataset, key_of(src.source_class)};
    SourceClassTally& tally = tallies[key];
    tally.dataset = key.first;
    tally.source_class = key.second;
    ++tally.input;
    if (target->kind == MapTarget::Kind::kDrop) {
      ++tally.dropped;
      continue;
    }
    Annotation anno;
    anno.box = src.box;
    anno.source_dataset = src.source_dataset;
    anno.frame_id = src.frame_id;
    anno.modality = src.modality;
    if (target->kind == MapTarget::Kind::kIgnore) {
      anno.ignore = true;
      anno.class_id = kIgnoreClassId;
      ++tally.ignored;
    } else {
      anno.class_id = target->class_id;
      ++tally.mapped;
    }
    result.annotations.push_back(std::move(anno));
  }
  for (auto& [key, tally] : tallies) result.tallies.push_back(std::move(tally));
  return result;
}

ClassFilter ClassFilter::full(std::span<const std::string> class_names) {
  return {FilterKind::kFull, {class_names.begin(), class_names.end()}};
}

ClassFilter ClassFilter::seven_class() {
  return {FilterKind::kSevenClass,
          {"Car", "Pedestrian", "Cyclist", "Truck", "Bus", "Motorcycle", "Scooter"}};
}

ClassFilter ClassFilter::four_class() {
  return {FilterKind::kFourClass, {"Pedestrian", "Cyclist", "Motorcycle", "Scooter"}};
}

ClassFilter ClassFilter::custom(std::vector<std::string> kept) {
  return {FilterKind::kCustom, std::move(kept)};
}

std::string_view to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::kFull:
      return "FULL";
    case FilterKind::kSevenClass:
      return "SEVEN_CLASS";
    case FilterKind::kFourClass:
      return "FOUR_CLASS";
    case FilterKind::kCustom:
      return "CUSTOM";
  }
  return "UNKNOWN";
}

ClassFilter parse_class_filter(std::string_view text,
                               std::span<const std::string> class_names) {
  const std::string folded = fold_case(trim(text));
  if (folded == "full") return ClassFilter::full(class_names);
  if (folded == "seven" || folded == "7" || folded == "7class" || folded == "7-class" ||
      folded == "seven_class") {
    return ClassFilter::seven_class();
  }
  if (folded == "four" || folded == "4" || folded == "4class" || folded == "4-class" ||
      folded == "four_class") {
    return ClassFilter::four_class();
  }
  if (folded.rfind("custom:", 0) == 0) {
    std::vector<std::string> kept;
    std::string_view rest = trim(text).substr(7);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      if (!item.empty()) kept.emplace_back(item);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return ClassFilter::custom(std::move(kept));
  }
  throw ConfigError("unknown class filter '" + std::string(text) +
                    "' (expected full, seven, four, or custom:A,B,...)");
}

FilterResult apply_class_filter(std::span<const Annotation> annotations,
                                const ClassFilter& filter,
                                std::span<const std::string> class_names) {
  if (filter.kept.empty()) throw ConfigError("class filter keeps no classes");

  FilterResult result;
  result.remap.assign(class_names.size(), -1);
  for (const std::string& name : filter.kept) {
    const std::string key = key_of(name);
    const auto it = std::find_if(class_names.begin(), class_names.end(),
                                 [&](const std::string& c) { return key_of(c) == key; });
    if (it == class_names.end()) {
      throw ConfigError("class filter names unknown class '" + name + "'");
    }
    const auto old_id = static_cast<std::size_t>(it - class_names.begin());
    if (result.remap[old_id] != -1) {
      throw ConfigError("class filter lists '" + name + "' twice");
    }
    result.remap[old_id] = static_cast<int>(result.class_names.size());
    result.class_names.push_back(*it);
  }

  result.annotations.reserve(annotations.size());
  for (const Annotation& anno : annotations) {
    if (anno.ignore) {
      result.annotations.push_back(anno);
      continue;
    }
    if (anno.class_id < 0 || anno.class_id >= static_cast<int>(class_names.size())) {
      throw ValidationError("annotation class id " + std::to_string(anno.class_id) +
                            " is outside the class set");
    }
    const int new_id = result.remap[static_cast<std::size_t>(anno.class_id)];
    if (new_id < 0) {
      ++result.removed;
      continue;
    }
    Annotation kept = anno;
    kept.class_id = new_id;
    result.annotations.push_back(std::move(kept));
  }
  return result;
}

}  // namespace vrukit

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

#include <gtest/gtest.h>

#include <string>
#include <tuple>
#include <vector>

#include "vrukit/error.hpp"
#include "vrukit/label_map.hpp"

namespace vrukit {
namespace {

SourceAnnotation src(SourceDataset d, std::string cls, std::string frame = "f") {
  SourceAnnotation a;
  a.source_dataset = d;
  a.source_class = std::move(cls);
  a.box = {1, 1, 5, 5};
  a.frame_id = std::move(frame);
  return a;
}

Annotation unified(int id, bool ignore = false) {
  Annotation a;
  a.class_id = ignore ? kIgnoreClassId : id;
  a.ignore = ignore;
  a.box = {0, 0, 1, 1};
  return a;
}

TEST(DefaultMap, ClassOrder) {
  const std::vector<std::string> expected = {"Car",   "Pedestrian", "Cyclist",
                                             "Bus",   "Truck",      "Animal",
                                             "Motorcycle", "Scooter", "OtherVehicle"};
  EXPECT_EQ(default_class_names(), expected);
  EXPECT_EQ(default_label_map().class_names(), expected);
}

using Row = std::tuple<SourceDataset, const char*, const char*>;  // "" = Ignore

class MappingCells : public ::testing::TestWithParam<Row> {};

TEST_P(MappingCells, Maps) {
  const auto& [dataset, source, target] = GetParam();
  const LabelMap map = default_label_map();
  const auto got = map.lookup(dataset, source);
  ASSERT_TRUE(got.has_value()) << source;
  if (std::string(target).empty()) {
    EXPECT_EQ(*got, MapTarget::ignore()) << source;
  } else {
    EXPECT_EQ(*got, MapTarget::to_class(*map.class_index(target))) << source;
  }
}

using enum SourceDataset;
INSTANTIATE_TEST_SUITE_P(
    AllCells, MappingCells,
    ::testing::Values(
        Row{kKitti, "Car", "Car"}, Row{kKitti, "Van", "Car"},
        Row{kKitti, "Pedestrian", "Pedestrian"}, Row{kKitti, "Person_sitting", "Pedestrian"},
        Row{kKitti, "Cyclist", "Cyclist"}, Row{kKitti, "Bus", "Bus"},
        Row{kKitti, "Truck", "Truck"}, Row{kKitti, "Animal", "Animal"},
        Row{kKitti, "Motorcycle", "Motorcycle"}, Row{kKitti, "Scooter", "Scooter"},
        Row{kKitti, "Tram", "OtherVehicle"}, Row{kKitti, "Misc", "OtherVehicle"},
        Row{kKitti, "Don't care", ""}, Row{kKitti, "DontCare", ""},
        Row{kBdd100k, "Car", "Car"}, Row{kBdd100k, "Person", "Pedestrian"},
        Row{kBdd100k, "rider", "Pedestrian"}, Row{kBdd100k, "Bike", "Cyclist"},
        Row{kBdd100k, "Bus", "Bus"}, Row{kBdd100k, "truck", "Truck"},
        Row{kBdd100k, "Motor", "Motorcycle"}, Row{kBdd100k, "Train", "OtherVehicle"},
        Row{kBdd100k, "Traffig sign", ""}, Row{kBdd100k, "traffic light", ""},
        Row{kFlir, "Car", "Car"}, Row{kFlir, "Person", "Pedestrian"},
        Row{kFlir, "people", "Pedestrian"}, Row{kFlir, "stroller", "Pedestrian"},
        Row{kFlir, "Bike", "Cyclist"}, Row{kFlir, "Bus", "Bus"},
        Row{kFlir, "truck", "Truck"}, Row{kFlir, "Dog", "Animal"},
        Row{kFlir, "Motor", "Motorcycle"}, Row{kFlir, "Scooter", "Scooter"},
        Row{kFlir, "Train", "OtherVehicle"}, Row{kFlir, "other vehicle", "OtherVehicle"},
        Row{kFlir, "Skateboard", ""}, Row{kFlir, "light", ""},
        Row{kFlir, "hydrant", ""}, Row{kFlir, "sign", ""}));

TEST(DefaultMap, CaseAndWhitespaceAreFolded) {
  const LabelMap map = default_label_map();
  EXPECT_EQ(map.lookup(kKitti, "  VAN "), map.lookup(kKitti, "Van"));
  EXPECT_EQ(map.lookup(kBdd100k, "bike"), map.lookup(kBdd100k, "Bike"));
  EXPECT_EQ(map.lookup(kFlir, "TRUCK"), map.lookup(kFlir, "truck"));
}

TEST(DefaultMap, NoEntryForNotAvailableCells) {
  const LabelMap map = default_label_map();
  EXPECT_FALSE(map.lookup(kBdd100k, "Animal").has_value());
  EXPECT_FALSE(map.lookup(kBdd100k, "Scooter").has_value());
}

TEST(ApplyLabelMap, PersonSittingAndDontCare) {
  const std::vector<SourceAnnotation> in = {src(kKitti, "Person_sitting"),
                                            src(kKitti, "DontCare")};
  const MappingResult r = apply_label_map(in, default_label_map());
  ASSERT_EQ(r.annotations.size(), 2u);
  EXPECT_EQ(r.annotations[0].class_id, 1);
  EXPECT_FALSE(r.annotations[0].ignore);
  EXPECT_TRUE(r.annotations[1].ignore);
  EXPECT_EQ(r.annotations[1].class_id, kIgnoreClassId);
}

TEST(ApplyLabelMap, UnmappedClassIsAnErrorNamingEverything) {
  const std::vector<SourceAnnotation> in = {src(kKitti, "Car"),
                                            src(kKitti, "unicycle", "000042")};
  try {
    apply_label_map(in, default_label_map());
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("unicycle"), std::string::npos);
    EXPECT_NE(msg.find("000042"), std::string::npos);
    EXPECT_NE(msg.find("kitti"), std::string::npos);
  }
}

TEST(ApplyLabelMap, WildcardDropAndConservation) {
  LabelMap map = default_label_map();
  map.set_wildcard_drop(kBdd100k, true);
  map.set(kBdd100k, "train", MapTarget::drop());
  const std::vector<SourceAnnotation> in = {
      src(kBdd100k, "car"), src(kBdd100k, "unicycle"), src(kBdd100k, "train"),
      src(kBdd100k, "traffic light"), src(kBdd100k, "Car")};
  const MappingResult r = apply_label_map(in, map);
  EXPECT_EQ(r.annotations.size() + r.dropped_total(), in.size());
  EXPECT_EQ(r.dropped_total(), 2u);
  std::size_t input = 0;
  for (const auto& t : r.tallies) {
    EXPECT_EQ(t.input, t.mapped + t.ignored + t.dropped) << t.source_class;
    input += t.input;
  }
  EXPECT_EQ(input, in.size());
  const auto car = std::find_if(r.tallies.begin(), r.tallies.end(),
                                [](const SourceClassTally& t) { return t.source_class == "car"; });
  ASSERT_NE(car, r.tallies.end());
  EXPECT_EQ(car->input, 2u);
  EXPECT_THROW(apply_label_map(std::vector{src(kKitti, "unicycle")}, map), ValidationError);
}

TEST(ApplyLabelMap, IdentityMapIsIdentity) {
  const LabelMap map = LabelMap::identity(default_class_names());
  std::vector<SourceAnnotation> in;
  for (const auto& name : default_class_names()) in.push_back(src(kYolo, name));
  const MappingResult r = apply_label_map(in, map);
  ASSERT_EQ(r.annotations.size(), in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    EXPECT_EQ(r.annotations[i].class_id, static_cast<int>(i));
    EXPECT_EQ(r.annotations[i].box, in[i].box);
  }
}

TEST(Overrides, ReplaceAndExtend) {
  const LabelMap map = apply_label_map_overrides(default_label_map(), R"({
    "bdd100k": {"rider": "Cyclist", "traffic light": "Drop", "*": "Drop"},
    "flir": {"deer": "Animal", "sign": "ignore"}})");
  EXPECT_EQ(*map.lookup(kBdd100k, "rider"), MapTarget::to_class(2));
  EXPECT_EQ(*map.lookup(kBdd100k, "traffic light"), MapTarget::drop());
  EXPECT_TRUE(map.wildcard_drop(kBdd100k));
  EXPECT_FALSE(map.wildcard_drop(kFlir));
  EXPECT_EQ(*map.lookup(kFlir, "Deer"), MapTarget::to_class(5));
  EXPECT_EQ(*map.lookup(kFlir, "sign"), MapTarget::ignore());
}

TEST(Overrides, BadDocumentsAreConfigErrors) {
  EXPECT_THROW(apply_label_map_overrides(default_label_map(), "[1]"), ConfigError);
  EXPECT_THROW(apply_label_map_overrides(default_label_map(), "{"), ConfigError);
  EXPECT_THROW(apply_label_map_overrides(default_label_map(), R"({"nuscenes": {}})"),
               ConfigError);
  EXPECT_THROW(apply_label_map_overrides(default_label_map(), R"({"kitti": {"x": "Boat"}})"),
               ConfigError);
  EXPECT_THROW(apply_label_map_overrides(default_label_map(), R"({"kitti": {"*": "Car"}})"),
               ConfigError);
}

TEST(Filter, FourClassKeepsOnlyPedestrian) {
  const std::vector<Annotation> in = {unified(0), unified(1)};
  const FilterResult r =
      apply_class_filter(in, ClassFilter::four_class(), default_class_names());
  ASSERT_EQ(r.annotations.size(), 1u);
  EXPECT_EQ(r.annotations[0].class_id, 0);  // Pedestrian is first in the kept order
  EXPECT_EQ(r.class_names.front(), "Pedestrian");
  EXPECT_EQ(r.removed, 1u);
}

TEST(Filter, FullIsIdentity) {
  std::vector<Annotation> in;
  for (int c = 0; c < 9; ++c) in.push_back(unified(c));
  in.push_back(unified(0, true));
  const auto names = default_class_names();
  const FilterResult r = apply_class_filter(in, ClassFilter::full(names), names);
  ASSERT_EQ(r.annotations.size(), in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    EXPECT_EQ(r.annotations[i].class_id, in[i].class_id);
  }
  EXPECT_EQ(r.class_names, names);
}

TEST(Filter, IgnoreRegionsSurvive) {
  const std::vector<Annotation> in = {unified(0, true), unified(0)};
  const FilterResult r =
      apply_class_filter(in, ClassFilter::four_class(), default_class_names());
  ASSERT_EQ(r.annotations.size(), 1u);
  EXPECT_TRUE(r.annotations[0].ignore);
}

TEST(Filter, RemapIsABijectionOntoDenseIds) {
  const auto names = default_class_names();
  for (const ClassFilter& f : {ClassFilter::seven_class(), ClassFilter::four_class()}) {
    const FilterResult r = apply_class_filter(std::vector<Annotation>{}, f, names);
    std::vector<int> seen;
    for (std::size_t c = 0; c < names.size(); ++c) {
      if (r.remap[c] >= 0) {
        seen.push_back(r.remap[c]);
        EXPECT_EQ(r.class_names[static_cast<std::size_t>(r.remap[c])], names[c]);
      }
    }
    std::sort(seen.begin(), seen.end());
    ASSERT_EQ(seen.size(), f.kept.size());
    for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], static_cast<int>(i));
  }
}

TEST(Filter, MonotoneInKeptSet) {
  const auto names = default_class_names();
  std::vector<Annotation> in;
  for (int c = 0; c < 9; ++c) {
    for (int k = 0; k <= c; ++k) in.push_back(unified(c));
  }
  const auto full = apply_class_filter(in, ClassFilter::full(names), names).annotations.size();
  const auto seven = apply_class_filter(in, ClassFilter::seven_class(), names).annotations.size();
  const auto four = apply_class_filter(in, ClassFilter::four_class(), names).annotations.size();
  EXPECT_GE(full, seven);
  EXPECT_GE(seven, four);
}

TEST(Filter, EmptyOrUnknownKeptSetIsConfigError) {
  const auto names = default_class_names();
  EXPECT_THROW(apply_class_filter(std::vector<Annotation>{}, ClassFilter::custom({}), names),
               ConfigError);
  EXPECT_THROW(
      apply_class_filter(std::vector<Annotation>{}, ClassFilter::custom({"Boat"}), names),
      ConfigError);
}

TEST(Filter, ParseNames) {
  const auto names = default_class_names();
  EXPECT_EQ(parse_class_filter("full", names).kind, FilterKind::kFull);
  EXPECT_EQ(parse_class_filter("SEVEN_CLASS", names).kind, FilterKind::kSevenClass);
  EXPECT_EQ(parse_class_filter("4", names).kind, FilterKind::kFourClass);
  const ClassFilter c = parse_class_filter("custom:Car, Bus", names);
  EXPECT_EQ(c.kind, FilterKind::kCustom);
  EXPECT_EQ(c.kept, (std::vector<std::string>{"Car", "Bus"}));
  EXPECT_THROW(parse_class_filter("three", names), ConfigError);
}

// Counts through SEVEN_CLASS then FOUR_CLASS zero the vehicle rows.
TEST(Filter, SevenThenFourZeroesVehicles) {
  const auto names = default_class_names();
  const std::vector<std::pair<std::string, int>> seven_counts = {
      {"Car", 31}, {"Pedestrian", 5}, {"Cyclist", 3}, {"Truck", 4},
      {"Bus", 2}, {"Motorcycle", 2}, {"Scooter", 1}};
  std::vector<Annotation> in;
  for (const auto& [name, n] : seven_counts) {
    for (int k = 0; k < n; ++k) {
      in.push_back(unified(*LabelMap(names).class_index(name)));
    }
  }
  in.push_back(unified(5));  // Animal, gone under both filters
  in.push_back(unified(8));  // OtherVehicle
  const FilterResult seven = apply_class_filter(in, ClassFilter::seven_class(), names);
  const FilterResult four =
      apply_class_filter(seven.annotations, ClassFilter::four_class(), seven.class_names);
  auto count = [](const FilterResult& r, const std::string& name) {
    const auto it = std::find(r.class_names.begin(), r.class_names.end(), name);
    if (it == r.class_names.end()) return 0;
    const int id = static_cast<int>(it - r.class_names.begin());
    return static_cast<int>(std::count_if(r.annotations.begin(), r.annotations.end(),
                                          [&](const Annotation& a) { return a.class_id == id; }));
  };
  for (const auto& [name, n] : seven_counts) {
    EXPECT_EQ(count(seven, name), n) << name;
    const bool vehicle = name == "Car" || name == "Truck" || name == "Bus";
    EXPECT_EQ(count(four, name), vehicle ? 0 : n) << name;
  }
  EXPECT_EQ(seven.class_names,
            (std::vector<std::string>{"Car", "Pedestrian", "Cyclist", "Truck", "Bus",
                                      "Motorcycle", "Scooter"}));
}

}  // namespace
}  // namespace vrukit

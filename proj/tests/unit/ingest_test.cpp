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

#include "oracles.hpp"
#include "vrukit/error.hpp"
#include "vrukit/ingest.hpp"

namespace vrukit {
namespace {

TEST(Kitti, ParsesOneObject) {
  const auto annos = parse_kitti_label_file(
      "Car 0.00 0 0.0 100.0 100.0 200.0 200.0 1.5 1.6 3.9 1.0 1.0 10.0 0.0\n", "000001");
  ASSERT_EQ(annos.size(), 1u);
  EXPECT_EQ(annos[0].source_class, "Car");
  EXPECT_EQ(annos[0].box, (BoundingBox{100, 100, 200, 200}));
  EXPECT_EQ(annos[0].frame_id, "000001");
  EXPECT_EQ(annos[0].source_dataset, SourceDataset::kKitti);
  ASSERT_TRUE(annos[0].kitti.has_value());
}

TEST(Kitti, DontCareSentinelsAreLegal) {
  const auto annos = parse_kitti_label_file(
      "DontCare -1 -1 -10 50.0 50.0 60.0 60.0 -1 -1 -1 -1000 -1000 -1000 -10\n");
  ASSERT_EQ(annos.size(), 1u);
  EXPECT_EQ(annos[0].source_class, "DontCare");
  EXPECT_EQ(annos[0].box, (BoundingBox{50, 50, 60, 60}));
}

TEST(Kitti, EmptyFileGivesNothing) {
  EXPECT_TRUE(parse_kitti_label_file("").empty());
  EXPECT_TRUE(parse_kitti_label_file("\n  \n").empty());
}

TEST(Kitti, ScoreColumnIsTolerated) {
  const auto annos = parse_kitti_label_file(
      "Van 0 0 0 1 2 3 4 1 1 1 0 0 0 0 0.87\r\n");
  ASSERT_EQ(annos.size(), 1u);
  EXPECT_EQ(annos[0].box, (BoundingBox{1, 2, 3, 4}));
}

TEST(Kitti, ShortLineReportsItsLineNumber) {
  try {
    parse_kitti_label_file(
        "Car 0 0 0 1 2 3 4 1 1 1 0 0 0 0\nCar 0 0 0 1 2 3\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Kitti, RejectsInvertedOrEmptyBoxes) {
  EXPECT_THROW(parse_kitti_label_file("Car 0 0 0 10 2 3 4 1 1 1 0 0 0 0\n"), ValidationError);
  EXPECT_THROW(parse_kitti_label_file("Car 0 0 0 1 2 1 4 1 1 1 0 0 0 0\n"), ValidationError);
  EXPECT_THROW(parse_kitti_label_file("Car 0 0 0 x 2 3 4 1 1 1 0 0 0 0\n"), ParseError);
}

TEST(Bdd, OneLabelOneAnnotation) {
  const ParsedFrames p = parse_bdd100k_json(R"([{"name": "a.jpg", "labels": [
      {"category": "person", "box2d": {"x1": 0, "y1": 0, "x2": 10, "y2": 20}}]}])");
  ASSERT_EQ(p.frames.size(), 1u);
  ASSERT_EQ(p.frames[0].annotations.size(), 1u);
  EXPECT_EQ(p.frames[0].frame_id, "a");
  EXPECT_EQ(p.frames[0].annotations[0].source_class, "person");
  EXPECT_EQ(p.frames[0].annotations[0].box, (BoundingBox{0, 0, 10, 20}));
}

TEST(Bdd, LanePolylineIsSkipped) {
  const ParsedFrames p = parse_bdd100k_json(R"([{"name": "b.jpg", "labels": [
      {"category": "lane", "poly2d": [{"vertices": [[0, 0], [5, 5]]}]}]}])");
  ASSERT_EQ(p.frames.size(), 1u);
  EXPECT_TRUE(p.frames[0].annotations.empty());
  ASSERT_EQ(p.skipped.size(), 1u);
  EXPECT_EQ(p.skipped[0].source_class, "lane");
  EXPECT_EQ(p.record_count, 1u);
}

TEST(Bdd, ThreeFrameFixtureMatchesHandCount) {
  // Hand count: 2 + 0 + 3 boxes, 2 box-less labels, one frame without labels.
  const ParsedFrames p = parse_bdd100k_json(R"([
    {"name": "f1.jpg", "labels": [
      {"category": "car", "box2d": {"x1": 1, "y1": 1, "x2": 5, "y2": 5}},
      {"category": "drivable area", "poly2d": []},
      {"category": "rider", "box2d": {"x1": 2, "y1": 2, "x2": 4, "y2": 8}}]},
    {"name": "f2.jpg"},
    {"name": "f3.jpg", "labels": [
      {"category": "traffic light", "box2d": {"x1": 0, "y1": 0, "x2": 1, "y2": 1}},
      {"category": "lane", "poly2d": []},
      {"category": "bus", "box2d": {"x1": 3, "y1": 3, "x2": 9, "y2": 9}},
      {"category": "truck", "box2d": {"x1": 3, "y1": 3, "x2": 9.5, "y2": 9}}]}])");
  ASSERT_EQ(p.frames.size(), 3u);
  EXPECT_EQ(p.frames[0].annotations.size(), 2u);
  EXPECT_EQ(p.frames[1].annotations.size(), 0u);
  EXPECT_EQ(p.frames[2].annotations.size(), 3u);
  EXPECT_EQ(p.skipped.size(), 2u);
  EXPECT_EQ(p.record_count, 7u);
}

TEST(Bdd, MalformedDocumentsThrow) {
  EXPECT_THROW(parse_bdd100k_json("{}"), ParseError);
  EXPECT_THROW(parse_bdd100k_json("[{\"labels\": []}]"), ParseError);
  EXPECT_THROW(parse_bdd100k_json("[{"), ParseError);
}

TEST(Coco, BboxWidthHeightBecomeCorners) {
  const ParsedFrames p = parse_coco_json(R"({
    "images": [{"id": 1, "file_name": "x/img1.jpeg", "width": 640, "height": 512}],
    "annotations": [{"id": 1, "image_id": 1, "category_id": 1, "bbox": [10, 10, 30, 40]}],
    "categories": [{"id": 1, "name": "person"}]})");
  ASSERT_EQ(p.frames.size(), 1u);
  EXPECT_EQ(p.frames[0].frame_id, "img1");
  EXPECT_EQ(p.frames[0].image_width, 640);
  ASSERT_EQ(p.frames[0].annotations.size(), 1u);
  EXPECT_EQ(p.frames[0].annotations[0].box, (BoundingBox{10, 10, 40, 50}));
  EXPECT_EQ(p.frames[0].annotations[0].source_class, "person");
  EXPECT_EQ(p.frames[0].annotations[0].modality, Modality::kThermal);
}

TEST(Coco, TwoImagesFiveAnnotationsHandCount) {
  const ParsedFrames p = parse_coco_json(R"({
    "images": [{"id": 7, "file_name": "a.jpg"}, {"id": 9, "file_name": "b.jpg"},
               {"id": 11, "file_name": "empty.jpg"}],
    "annotations": [
      {"id": 1, "image_id": 7, "category_id": 2, "bbox": [0, 0, 5, 5]},
      {"id": 2, "image_id": 9, "category_id": 1, "bbox": [1, 1, 5, 5]},
      {"id": 3, "image_id": 7, "category_id": 1, "bbox": [2, 2, 5, 5]},
      {"id": 4, "image_id": 9, "category_id": 3, "bbox": [3, 3, 5, 5]},
      {"id": 5, "image_id": 9, "category_id": 2, "bbox": [4, 4, 5, 5]}],
    "categories": [{"id": 1, "name": "person"}, {"id": 2, "name": "car"},
                   {"id": 3, "name": "dog"}]})");
  ASSERT_EQ(p.frames.size(), 3u);
  std::size_t total = 0;
  for (const auto& f : p.frames) total += f.annotations.size();
  EXPECT_EQ(total, 5u);
  EXPECT_EQ(p.record_count, 5u);
  const auto empty = std::find_if(p.frames.begin(), p.frames.end(),
                                  [](const SourceFrame& f) { return f.frame_id == "empty"; });
  ASSERT_NE(empty, p.frames.end());
  EXPECT_TRUE(empty->annotations.empty());
}

TEST(Coco, ReferentialIntegrity) {
  EXPECT_THROW(parse_coco_json(R"({"images": [], "annotations": [
      {"id": 1, "image_id": 3, "category_id": 1, "bbox": [0, 0, 1, 1]}],
      "categories": [{"id": 1, "name": "car"}]})"),
               ValidationError);
  EXPECT_THROW(parse_coco_json(R"({"images": [{"id": 3, "file_name": "a.jpg"}],
      "annotations": [{"id": 1, "image_id": 3, "category_id": 4, "bbox": [0, 0, 1, 1]}],
      "categories": [{"id": 1, "name": "car"}]})"),
               ValidationError);
  EXPECT_THROW(parse_coco_json(R"({"images": [{"id": 3, "file_name": "a.jpg"}],
      "annotations": [{"id": 1, "image_id": 3, "category_id": 1, "bbox": [0, 0, -1, 1]}],
      "categories": [{"id": 1, "name": "car"}]})"),
               ValidationError);
  EXPECT_THROW(parse_coco_json(R"({"images": []})"), ParseError);
}

TEST(Yolo, WriterFormat) {
  const std::vector<YoloLabel> labels = {{0, {0.5, 0.5, 1.0, 1.0}}};
  EXPECT_EQ(write_yolo_label_file(labels), "0 0.500000 0.500000 1.000000 1.000000\n");
  EXPECT_EQ(write_yolo_label_file({}), "");
}

TEST(Yolo, ReaderMirrorsWriter) {
  const auto labels = read_yolo_label_file("0 0.500000 0.500000 1.000000 1.000000\n");
  ASSERT_EQ(labels.size(), 1u);
  EXPECT_EQ(labels[0], (YoloLabel{0, {0.5, 0.5, 1.0, 1.0}}));
  EXPECT_TRUE(read_yolo_label_file("").empty());
}

TEST(Yolo, RoundTripWithinOneMicro) {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<YoloLabel> labels;
    for (int i = 0; i < 6; ++i) {
      const BoundingBox b = oracle::random_box(rng);
      labels.push_back({static_cast<int>(rng.uniform_int(0, 8)),
                        make_normalized((b.x_min + b.x_max) / 2, (b.y_min + b.y_max) / 2,
                                        b.x_max - b.x_min, b.y_max - b.y_min)});
    }
    const auto back = read_yolo_label_file(write_yolo_label_file(labels));
    ASSERT_EQ(back.size(), labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      EXPECT_EQ(back[i].class_id, labels[i].class_id);
      EXPECT_NEAR(back[i].box.cx, labels[i].box.cx, 1e-6);
      EXPECT_NEAR(back[i].box.cy, labels[i].box.cy, 1e-6);
      EXPECT_NEAR(back[i].box.w, labels[i].box.w, 1e-6);
      EXPECT_NEAR(back[i].box.h, labels[i].box.h, 1e-6);
    }
  }
}

TEST(Yolo, ReaderRejectsGarbage) {
  EXPECT_THROW(read_yolo_label_file("0 0.5 0.5 0.1\n"), ParseError);
  EXPECT_THROW(read_yolo_label_file("-1 0.5 0.5 0.1 0.1\n"), ValidationError);
  EXPECT_THROW(read_yolo_label_file("0 0.5 1.5 0.1 0.1\n"), ValidationError);
  EXPECT_THROW(read_yolo_label_file("a 0.5 0.5 0.1 0.1\n"), ParseError);
}

TEST(IgnoreRegions, RoundTrip) {
  const std::vector<NormalizedBox> regions = {{0.25, 0.5, 0.1, 0.2}, {0.75, 0.5, 0.5, 0.5}};
  const std::string text = write_ignore_region_file(regions);
  EXPECT_EQ(text, "0.250000 0.500000 0.100000 0.200000\n0.750000 0.500000 0.500000 0.500000\n");
  EXPECT_EQ(read_ignore_region_file(text), regions);
}

TEST(FrameId, StemOfPath) {
  EXPECT_EQ(frame_id_from_path("a/b/c.tar.png"), "c.tar");
  EXPECT_EQ(frame_id_from_path("img.jpg"), "img");
  EXPECT_EQ(frame_id_from_path("C:\\x\\y.jpeg"), "y");
}

}  // namespace
}  // namespace vrukit

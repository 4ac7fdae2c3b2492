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

#include <algorithm>

#include "oracles.hpp"
#include "vrukit/error.hpp"
#include "vrukit/geometry.hpp"

namespace vrukit {
namespace {

TEST(Iou, IdenticalBoxesGiveOne) {
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0);
}

TEST(Iou, DisjointBoxesGiveZero) {
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {20, 20, 30, 30}), 0.0);
}

TEST(Iou, HandComputedOverlap) {
  // intersection 2, union 6
  EXPECT_DOUBLE_EQ(iou({0, 0, 2, 2}, {1, 0, 3, 2}), 1.0 / 3.0);
}

TEST(Iou, TouchingEdgesDoNotOverlap) {
  EXPECT_DOUBLE_EQ(iou({0, 0, 1, 1}, {1, 0, 2, 1}), 0.0);
}

TEST(Iou, ZeroAreaBoxesGiveZero) {
  EXPECT_DOUBLE_EQ(iou({1, 1, 1, 1}, {1, 1, 1, 1}), 0.0);
}

TEST(Iou, SymmetricAndBoundedOnRandomBoxes) {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const BoundingBox a = oracle::random_box(rng, i % 2 ? 10 : 0);
    const BoundingBox b = oracle::random_box(rng, i % 2 ? 10 : 0);
    const double v = iou(a, b);
    EXPECT_EQ(v, iou(b, a));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_EQ(v, oracle::box_iou(a, b));
  }
}

TEST(Normalize, FullFrameBox) {
  const NormalizedBox n = to_normalized({0, 0, 100, 100}, 100, 100);
  EXPECT_EQ(n, (NormalizedBox{0.5, 0.5, 1.0, 1.0}));
}

TEST(Normalize, CenteredHalfBox) {
  const NormalizedBox n = to_normalized({25, 25, 75, 75}, 100, 100);
  EXPECT_EQ(n, (NormalizedBox{0.5, 0.5, 0.5, 0.5}));
}

TEST(Normalize, SmallBoxInVgaFrame) {
  const NormalizedBox n = to_normalized({0, 0, 10, 10}, 640, 480);
  EXPECT_DOUBLE_EQ(n.cx, 0.0078125);
  EXPECT_NEAR(n.cy, 0.0104166666666, 1e-12);
  EXPECT_DOUBLE_EQ(n.w, 0.015625);
  EXPECT_NEAR(n.h, 0.0208333333333, 1e-12);
}

TEST(Normalize, InverseExamples) {
  EXPECT_EQ(from_normalized({0.5, 0.5, 1.0, 1.0}, 100, 100), (BoundingBox{0, 0, 100, 100}));
  EXPECT_EQ(from_normalized({0.5, 0.5, 0.5, 0.5}, 100, 100), (BoundingBox{25, 25, 75, 75}));
}

TEST(Normalize, RoundTripWithinTolerance) {
  Rng rng(5);
  for (int i = 0; i < 5000; ++i) {
    const double w = rng.uniform(16, 4000);
    const double h = rng.uniform(16, 4000);
    const BoundingBox u = oracle::random_box(rng);
    const BoundingBox b{u.x_min * w, u.y_min * h, u.x_max * w, u.y_max * h};
    const BoundingBox back = from_normalized(to_normalized(b, w, h), w, h);
    EXPECT_NEAR(back.x_min, b.x_min, 1e-6 * w);
    EXPECT_NEAR(back.y_min, b.y_min, 1e-6 * h);
    EXPECT_NEAR(back.x_max, b.x_max, 1e-6 * w);
    EXPECT_NEAR(back.y_max, b.y_max, 1e-6 * h);
  }
}

TEST(Normalize, ClampsBoxesThatSpillOutOfTheImage) {
  const NormalizedBox n = to_normalized({-10, 0, 50, 100}, 100, 100);
  EXPECT_DOUBLE_EQ(n.w, 0.5);
  EXPECT_DOUBLE_EQ(n.cx, 0.25);
}

TEST(Normalize, RejectsBadInput) {
  EXPECT_THROW(to_normalized({0, 0, 10, 10}, 0, 100), ValidationError);
  EXPECT_THROW(to_normalized({200, 200, 300, 300}, 100, 100), ValidationError);
  EXPECT_THROW(make_normalized(0.5, 0.5, std::nan(""), 0.1), ValidationError);
}

TEST(Nms, IdenticalBoxesKeepTheBest) {
  const std::vector<Detection> dets = {{0, {0, 0, 10, 10}, 0.8}, {0, {0, 0, 10, 10}, 0.9}};
  const auto kept = nms(dets, 0.5, true);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_DOUBLE_EQ(kept[0].confidence, 0.9);
}

TEST(Nms, DisjointBoxesSurvive) {
  const std::vector<Detection> dets = {{0, {0, 0, 10, 10}, 0.8}, {0, {20, 20, 30, 30}, 0.9}};
  EXPECT_EQ(nms(dets, 0.5, true).size(), 2u);
}

TEST(Nms, ClassAwareOnlySuppressesWithinAClass) {
  const std::vector<Detection> dets = {{0, {0, 0, 10, 10}, 0.9}, {1, {0, 0, 10, 10}, 0.8}};
  EXPECT_EQ(nms(dets, 0.5, true).size(), 2u);
  EXPECT_EQ(nms(dets, 0.5, false).size(), 1u);
}

TEST(Nms, MatchesBruteForceOracle) {
  Rng rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    const int grid = trial % 3 == 0 ? 8 : 0;
    const int n = static_cast<int>(rng.uniform_int(0, 10));
    std::vector<Detection> dets;
    for (int i = 0; i < n; ++i) {
      dets.push_back({static_cast<int>(rng.uniform_int(0, 2)), oracle::random_box(rng, grid),
                      oracle::random_confidence(rng, grid ? 4 : 0)});
    }
    const double thr = rng.uniform(0.1, 0.9);
    const bool aware = rng.bernoulli(0.5);
    EXPECT_EQ(nms(dets, thr, aware), oracle::nms(dets, thr, aware)) << "trial " << trial;
  }
}

TEST(Nms, OutputIndependentOfInputOrder) {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Detection> dets;
    for (int i = 0; i < 12; ++i) {
      dets.push_back({static_cast<int>(rng.uniform_int(0, 1)), oracle::random_box(rng, 4),
                      oracle::random_confidence(rng, 3)});
    }
    const auto reference = nms(dets, 0.5, true);
    std::reverse(dets.begin(), dets.end());
    EXPECT_EQ(nms(dets, 0.5, true), reference);
  }
}

TEST(Rank, ConfidenceThenClassThenBox) {
  const Detection a{1, {0, 0, 1, 1}, 0.9};
  const Detection b{0, {0, 0, 1, 1}, 0.8};
  const Detection c{0, {0, 0, 2, 2}, 0.8};
  EXPECT_TRUE(ranks_before(a, b));
  EXPECT_TRUE(ranks_before(b, c));
  EXPECT_FALSE(ranks_before(c, b));
  Detection d = b;
  d.modality = Modality::kThermal;
  EXPECT_FALSE(ranks_before(b, d));
  EXPECT_FALSE(ranks_before(d, b));
}

}  // namespace
}  // namespace vrukit

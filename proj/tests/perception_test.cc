/* Copyright 2026 The CMM Co-Simulation Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "cmm/common/geofence.h"
#include "cmm/lidar/lidar_model.h"
#include "cmm/perception/bev.h"
#include "cmm/perception/detector.h"
#include "cmm/perception/evaluation.h"
#include "cmm/perception/geofence_filter.h"
#include "cmm/perception/oriented_iou.h"
#include "cmm/perception/perception_stage.h"
#include "detector_scenes.h"
#include "gtest/gtest.h"

namespace cmm {
namespace {

constexpr double kPi = std::numbers::pi;

PointCloudFrame RandomFrame(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-20.0, 70.0), y(-40.0, 40.0),
      z(-4.0, 3.0), i(0.0, 1.0);
  PointCloudFrame frame;
  frame.tick = 7;
  for (int k = 0; k < n; ++k) {
    frame.points.push_back({static_cast<float>(x(rng)), static_cast<float>(y(rng)),
                            static_cast<float>(z(rng)), static_cast<float>(i(rng))});
  }
  return frame;
}

TEST(GeofenceTest, MatchesBruteForceMembership) {
  std::mt19937_64 rng(11);
  const PointCloudFrame frame = RandomFrame(10000, rng);
  const Geofence region;
  std::vector<LidarPoint> expected;
  for (const LidarPoint& p : frame.points) {
    const bool in_x = p.x >= 0.0 && p.x <= 50.0;
    const bool in_y = p.y >= -25.0 && p.y <= 25.0;
    const bool in_z = p.z >= -2.74 && p.z <= 1.36;
    if (in_x && in_y && in_z) expected.push_back(p);
  }
  const PointCloudFrame out = ApplyGeofence(frame, region);
  EXPECT_EQ(out.points, expected);
  EXPECT_EQ(out.tick, frame.tick);
  EXPECT_FALSE(expected.empty());
}

TEST(GeofenceTest, IsIdempotent) {
  std::mt19937_64 rng(12);
  const PointCloudFrame once = ApplyGeofence(RandomFrame(2000, rng), Geofence{});
  EXPECT_EQ(ApplyGeofence(once, Geofence{}), once);
}

TEST(GeofenceTest, SinglePointExamples) {
  PointCloudFrame frame;
  frame.points = {{60.0f, 0.0f, 0.0f, 0.5f}, {25.0f, 0.0f, -1.0f, 0.3f}};
  const PointCloudFrame out = ApplyGeofence(frame, Geofence{});
  ASSERT_EQ(out.points.size(), 1u);
  EXPECT_EQ(out.points[0], frame.points[1]);
}

TEST(GeofenceTest, BoundaryIsClosed) {
  PointCloudFrame frame;
  frame.points = {{0.0f, -25.0f, -2.74f, 0.0f}, {50.0f, 25.0f, 1.36f, 1.0f}};
  Geofence region;
  region.z = {-2.74f, 1.36f};  // the float values themselves
  EXPECT_EQ(ApplyGeofence(frame, region).points.size(), 2u);
}

TEST(BevTest, NormalizePointCornersAndCenter) {
  const BevGridConfig grid;
  const GridCoord origin = NormalizePoint(0.0, -25.0, grid);
  EXPECT_EQ(origin.x, 0.0);
  EXPECT_EQ(origin.y, 0.0);
  const GridCoord center = NormalizePoint(25.0, 0.0, grid);
  EXPECT_EQ(center.x, 304.0);
  EXPECT_EQ(center.y, 304.0);
  const GridCoord far = NormalizePoint(50.0, 25.0, grid);
  EXPECT_EQ(far.x, 608.0);
  EXPECT_EQ(far.y, 608.0);
}

TEST(BevTest, FarCornerBinsIntoLastCell) {
  PointCloudFrame frame;
  frame.points = {{50.0f, 25.0f, 0.0f, 0.5f}};
  const BevMap map = BuildBev(frame, BevGridConfig{});
  EXPECT_GT(map.at(607, 607)[BevMap::kDensity], 0.0f);
}

TEST(BevTest, NormalizePointIsAffine) {
  const BevGridConfig grid;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> x(0.0, 50.0), y(-25.0, 25.0);
  for (int k = 0; k < 100; ++k) {
    const double ax = x(rng), ay = y(rng), bx = x(rng), by = y(rng);
    const GridCoord a = NormalizePoint(ax, ay, grid);
    const GridCoord b = NormalizePoint(bx, by, grid);
    const GridCoord mid = NormalizePoint(0.5 * (ax + bx), 0.5 * (ay + by), grid);
    EXPECT_NEAR(mid.x, 0.5 * (a.x + b.x), 1e-9);
    EXPECT_NEAR(mid.y, 0.5 * (a.y + b.y), 1e-9);
  }
}

TEST(BevTest, EmptyFrameGivesZeroMap) {
  const BevMap map = BuildBev(PointCloudFrame{}, BevGridConfig{});
  ASSERT_EQ(map.width(), 608);
  ASSERT_EQ(map.height(), 608);
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) {
      for (float v : map.at(r, c)) ASSERT_EQ(v, 0.0f);
    }
  }
}

TEST(BevTest, DensitySaturatesAtSixtyThreePoints) {
  PointCloudFrame frame;
  for (int k = 0; k < 63; ++k) frame.points.push_back({10.0f, 1.0f, -1.0f, 0.2f});
  const BevMap map = BuildBev(frame, BevGridConfig{});
  const GridCoord g = NormalizePoint(10.0f, 1.0f, BevGridConfig{});
  EXPECT_EQ(map.at(static_cast<int>(g.x), static_cast<int>(g.y))[BevMap::kDensity],
            1.0f);
  EXPECT_DOUBLE_EQ(DensityValue(63, DensityNormalization::kLog64), 1.0);
  EXPECT_DOUBLE_EQ(DensityValue(63, DensityNormalization::kLiteral64),
                   std::log(64.0) / 64.0);
  EXPECT_DOUBLE_EQ(DensityValue(0, DensityNormalization::kLog64), 0.0);
}

TEST(BevTest, DensityIsMonotoneInCount) {
  for (auto mode : {DensityNormalization::kLog64, DensityNormalization::kLiteral64}) {
    for (int n = 0; n < 200; ++n) {
      EXPECT_LE(DensityValue(n, mode), DensityValue(n + 1, mode));
    }
  }
}

TEST(BevTest, SinglePointAtTopOfRange) {
  PointCloudFrame frame;
  frame.points = {{12.0f, -3.0f, 1.36f, 0.8f}};
  const BevMap map = BuildBev(frame, BevGridConfig{});
  const GridCoord g = NormalizePoint(12.0f, -3.0f, BevGridConfig{});
  const auto& cell = map.at(static_cast<int>(g.x), static_cast<int>(g.y));
  EXPECT_EQ(cell[BevMap::kHeight], 1.0f);
  EXPECT_EQ(cell[BevMap::kIntensity], 0.8f);
}

TEST(BevTest, ChannelsStayInUnitInterval) {
  std::mt19937_64 rng(5);
  const PointCloudFrame frame = ApplyGeofence(RandomFrame(20000, rng), Geofence{});
  // Pile extra points into one cell to exercise saturation.
  PointCloudFrame dense = frame;
  for (int k = 0; k < 500; ++k) dense.points.push_back({5.0f, 0.0f, 1.0f, 1.0f});
  for (auto mode : {DensityNormalization::kLog64, DensityNormalization::kLiteral64}) {
    BevGridConfig grid;
    grid.density = mode;
    const BevMap map = BuildBev(dense, grid);
    for (int r = 0; r < map.height(); ++r) {
      for (int c = 0; c < map.width(); ++c) {
        for (float v : map.at(r, c)) {
          ASSERT_GE(v, 0.0f);
          ASSERT_LE(v, 1.0f);
        }
      }
    }
  }
}

TEST(BevTest, RgbExportScalesChannels) {
  BevMap map(2, 1);
  map.at(0, 1) = {1.0f, 0.5f, 0.2f};
  const std::vector<uint8_t> rgb = map.ToRgb8();
  EXPECT_EQ(rgb, (std::vector<uint8_t>{0, 0, 0, 255, 128, 51}));
}

double AxisAlignedIou(const OrientedBox& a, const OrientedBox& b) {
  const double ix = std::max(0.0, std::min(a.center_x + a.length / 2, b.center_x + b.length / 2) -
                                      std::max(a.center_x - a.length / 2, b.center_x - b.length / 2));
  const double iy = std::max(0.0, std::min(a.center_y + a.width / 2, b.center_y + b.width / 2) -
                                      std::max(a.center_y - a.width / 2, b.center_y - b.width / 2));
  const double inter = ix * iy;
  return inter / (a.area() + b.area() - inter);
}

OrientedBox RandomBox(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-3.0, 3.0), d(0.3, 5.0), yaw(-kPi, kPi);
  return {c(rng), c(rng), d(rng), d(rng), yaw(rng)};
}

TEST(OrientedIouTest, Identity) {
  const OrientedBox box{3.0, -1.0, 4.5, 1.8, 0.7};
  EXPECT_NEAR(*OrientedIou(box, box), 1.0, 1e-12);
}

TEST(OrientedIouTest, Disjoint) {
  EXPECT_EQ(*OrientedIou({0, 0, 1, 1, 0.3}, {10, 0, 1, 1, 1.1}), 0.0);
}

TEST(OrientedIouTest, HalfOverlapSquares) {
  EXPECT_NEAR(*OrientedIou({0, 0, 1, 1, 0}, {0.5, 0, 1, 1, 0}), 1.0 / 3.0, 1e-15);
}

TEST(OrientedIouTest, DegenerateBoxIsError) {
  EXPECT_FALSE(OrientedIou({0, 0, 0, 1, 0}, {0, 0, 1, 1, 0}).ok());
  EXPECT_FALSE(OrientedIou({0, 0, 1, 1, 0}, {0, 0, 1, -1, 0}).ok());
  EXPECT_FALSE(OrientedIou({0, 0, NAN, 1, 0}, {0, 0, 1, 1, 0}).ok());
}

TEST(OrientedIouTest, SymmetricAndRigidInvariant) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> shift(-100.0, 100.0), angle(-kPi, kPi);
  for (int k = 0; k < 1000; ++k) {
    const OrientedBox a = RandomBox(rng), b = RandomBox(rng);
    const double ab = *OrientedIou(a, b);
    EXPECT_NEAR(ab, *OrientedIou(b, a), 1e-9);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0 + 1e-12);
    const Pose2D motion{shift(rng), shift(rng), angle(rng)};
    auto move = [&](OrientedBox box) {
      const Vec2 c = ToWorld(motion, box.center());
      box.center_x = c.x;
      box.center_y = c.y;
      box.yaw += motion.yaw;
      return box;
    };
    EXPECT_NEAR(*OrientedIou(move(a), move(b)), ab, 1e-9);
  }
}

TEST(OrientedIouTest, MatchesAxisAlignedFormula) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 500; ++k) {
    OrientedBox a = RandomBox(rng), b = RandomBox(rng);
    a.yaw = b.yaw = 0.0;
    EXPECT_NEAR(*OrientedIou(a, b), AxisAlignedIou(a, b), 1e-12);
  }
}

TEST(EvaluationTest, F1FromPublishedPrecisionRecall) {
  EXPECT_NEAR(100.0 * F1Score(0.8485, 0.9593), 90.05, 0.01);
  EXPECT_NEAR(100.0 * F1Score(0.3571, 0.4200), 38.60, 0.01);
  EXPECT_EQ(F1Score(0.0, 0.0), 0.0);
}

TEST(EvaluationTest, F1LiesBetweenPrecisionAndRecall) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(1e-6, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double p = u(rng), r = u(rng);
    const double f1 = F1Score(p, r);
    EXPECT_LE(f1, std::max(p, r) + 1e-15);
    EXPECT_GE(f1, std::min(p, r) - 1e-15);
  }
}

TEST(EvaluationTest, AllPointInterpolatedAveragePrecision) {
  // Ranked hits T, F, T against 3 ground truths: the precision envelope is 1
  // up to recall 1/3 and 2/3 up to recall 2/3.
  EXPECT_NEAR(AveragePrecision({true, false, true}, 3), 5.0 / 9.0, 1e-15);
  // A later, higher-precision point lifts the envelope before it.
  EXPECT_NEAR(AveragePrecision({false, true, true}, 2), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(AveragePrecision({}, 0), 0.0);
}

std::vector<LabeledBox> FiveLabels() {
  std::vector<LabeledBox> labels;
  for (int k = 0; k < 5; ++k) {
    LabeledBox box;
    box.agent_id = k;
    box.cls = k == 4 ? AgentClass::kPedestrian : AgentClass::kCar;
    box.x = 8.0 * k + 5.0;
    box.y = k % 2 == 0 ? 3.0 : -4.0;
    box.length = box.cls == AgentClass::kCar ? 4.5 : 0.6;
    box.width = box.cls == AgentClass::kCar ? 1.8 : 0.6;
    box.height = 1.5;
    box.yaw = 0.2 * k;
    labels.push_back(box);
  }
  return labels;
}

Detection FromLabel(const LabeledBox& label, double confidence) {
  Detection det;
  det.cls = label.cls;
  det.box = label.footprint();
  det.confidence = confidence;
  return det;
}

TEST(EvaluationTest, PerfectDetectionsScoreOne) {
  const std::vector<LabeledBox> labels = FiveLabels();
  std::vector<Detection> dets;
  for (const LabeledBox& l : labels) dets.push_back(FromLabel(l, 0.9));
  for (double thr : {0.5, 0.75}) {
    const EvalReport report = Evaluate(dets, labels, thr);
    EXPECT_EQ(report.precision, 1.0);
    EXPECT_EQ(report.recall, 1.0);
    EXPECT_EQ(report.ap, 1.0);
    EXPECT_EQ(report.f1, 1.0);
    for (const ClassMetrics& m : report.per_class) EXPECT_EQ(m.f1, 1.0);
  }
}

TEST(EvaluationTest, DuplicatedDetectionsHalvePrecision) {
  const std::vector<LabeledBox> labels = FiveLabels();
  std::vector<Detection> dets;
  for (const LabeledBox& l : labels) {
    dets.push_back(FromLabel(l, 0.9));
    dets.push_back(FromLabel(l, 0.4));
  }
  const EvalReport report = Evaluate(dets, labels, 0.5);
  EXPECT_EQ(report.true_positives, 5);
  EXPECT_DOUBLE_EQ(report.precision, 0.5);
  EXPECT_DOUBLE_EQ(report.recall, 1.0);
  // Every duplicate ranks below every original, so AP stays perfect.
  EXPECT_DOUBLE_EQ(report.ap, 1.0);
}

TEST(EvaluationTest, EmptyInputsGiveZeroReport) {
  const EvalReport report = Evaluate({}, {}, 0.5);
  EXPECT_EQ(report.num_ground_truth, 0);
  EXPECT_EQ(report.num_detections, 0);
  EXPECT_EQ(report.precision, 0.0);
  EXPECT_EQ(report.recall, 0.0);
  EXPECT_EQ(report.ap, 0.0);
  EXPECT_EQ(report.f1, 0.0);
}

TEST(EvaluationTest, ClassMismatchIsNotAMatch) {
  const std::vector<LabeledBox> labels = {FiveLabels()[0]};
  Detection det = FromLabel(labels[0], 1.0);
  det.cls = AgentClass::kTruck;
  const EvalReport report = Evaluate({&det, 1}, labels, 0.5);
  EXPECT_EQ(report.true_positives, 0);
}

TEST(EvaluationTest, ThresholdSeparatesShiftedBox) {
  // A 4.5 m box shifted 1 m along its length overlaps 3.5/5.5 = 0.636.
  const std::vector<LabeledBox> labels = {FiveLabels()[0]};
  Detection det = FromLabel(labels[0], 1.0);
  det.box.yaw = 0.0;
  det.box.center_x += 1.0;
  EXPECT_EQ(Evaluate({&det, 1}, labels, 0.5).true_positives, 1);
  EXPECT_EQ(Evaluate({&det, 1}, labels, 0.75).true_positives, 0);
}

// Highest-confidence detections are matched first, against the best
// overlapping label; checked against exhaustive search on small sets.
TEST(EvaluationTest, GreedyMatchingMatchesBruteForceCount) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> jitter(-0.6, 0.6), conf(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LabeledBox> labels = FiveLabels();
    labels.resize(1 + trial % 5);
    std::vector<Detection> dets;
    for (const LabeledBox& l : labels) {
      Detection d = FromLabel(l, conf(rng));
      d.box.center_x += jitter(rng);
      d.box.center_y += jitter(rng);
      dets.push_back(d);
    }
    // Labels are far apart, so a detection can only match its own label.
    int64_t expected = 0;
    for (size_t k = 0; k < labels.size(); ++k) {
      if (*OrientedIou(dets[k].box, labels[k].footprint()) >= 0.5) ++expected;
    }
    EXPECT_EQ(Evaluate(dets, labels, 0.5).true_positives, expected);
  }
}

TEST(EvaluationTest, CsvHasPooledRow) {
  const std::vector<LabeledBox> labels = FiveLabels();
  std::vector<Detection> dets;
  for (const LabeledBox& l : labels) dets.push_back(FromLabel(l, 0.9));
  std::ostringstream csv;
  WriteEvalCsv(Evaluate(dets, labels, 0.5), csv);
  EXPECT_EQ(csv.str().rfind("class,iou_threshold,num_gt,num_det,tp,precision,"
                            "recall,ap,f1\n", 0), 0u);
  EXPECT_NE(csv.str().find("\nAll,0.5,5,5,5,1,1,1,1\n"), std::string::npos);
}

TEST(MinAreaRectangleTest, RecoversSampledRectangle) {
  const OrientedBox truth{4.0, -2.0, 4.5, 1.8, 0.4};
  std::vector<Vec2> points;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 8; ++j) {
      const Vec2 local{-2.25 + 4.5 * i / 20.0, -0.9 + 1.8 * j / 8.0};
      points.push_back(ToWorld({truth.center_x, truth.center_y, truth.yaw}, local));
    }
  }
  const OrientedBox box = MinAreaRectangle(points, 0.1);
  EXPECT_NEAR(box.center_x, truth.center_x, 1e-9);
  EXPECT_NEAR(box.center_y, truth.center_y, 1e-9);
  EXPECT_NEAR(box.length, 4.5, 1e-9);
  EXPECT_NEAR(box.width, 1.8, 1e-9);
  EXPECT_NEAR(box.yaw, 0.4, 1e-9);
}

TEST(MinAreaRectangleTest, YawIsHalfOpenAndLengthIsLonger) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Vec2> points;
    for (int k = 0; k < 30; ++k) points.push_back({u(rng), 0.3 * u(rng)});
    const OrientedBox box = MinAreaRectangle(points, 0.1);
    EXPECT_GE(box.yaw, 0.0);
    EXPECT_LT(box.yaw, kPi);
    EXPECT_GE(box.length, box.width);
  }
}

TEST(MinAreaRectangleTest, DegenerateInputsUseMinimumExtent) {
  const std::vector<Vec2> single = {{1.0, 2.0}};
  const OrientedBox box = MinAreaRectangle(single, 0.1);
  EXPECT_EQ(box.center_x, 1.0);
  EXPECT_EQ(box.center_y, 2.0);
  EXPECT_EQ(box.length, 0.1);
  EXPECT_EQ(box.width, 0.1);
}

TEST(FitFootprintTest, PrefersLegAlignedRectangleForLShape) {
  // Two faces of a 4.5 x 1.8 box: the hull is a right triangle, which admits
  // equal-area rectangles along a leg and along the hypotenuse.
  std::vector<Vec2> points;
  for (int i = 0; i <= 45; ++i) points.push_back({0.1 * i, 0.0});
  for (int j = 1; j <= 18; ++j) points.push_back({0.0, 0.1 * j});
  const OrientedBox box = FitFootprint(points, 0.1, 0.15);
  EXPECT_NEAR(box.yaw, 0.0, 1e-9);
  EXPECT_NEAR(box.length, 4.5, 1e-9);
  EXPECT_NEAR(box.width, 1.8, 1e-9);
}

TEST(CompleteFootprintTest, GrowsAwayFromSensor) {
  const OrientedBox face{10.0, 5.0, 4.5, 0.1, 0.0};
  const OrientedBox grown = CompleteFootprint(face, 1.8);
  EXPECT_EQ(grown.width, 1.8);
  EXPECT_NEAR(grown.center_y, 5.0 + 0.85, 1e-12);
  const OrientedBox below{10.0, -5.0, 4.5, 0.1, 0.0};
  EXPECT_NEAR(CompleteFootprint(below, 1.8).center_y, -5.0 - 0.85, 1e-12);
  EXPECT_EQ(CompleteFootprint(grown, 1.0), grown);
}

TEST(ConvexHullTest, DropsInteriorAndCollinearPoints) {
  const std::vector<Vec2> hull =
      ConvexHull({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {1, 1}, {0, 2}, {0, 1}});
  ASSERT_EQ(hull.size(), 4u);
  EXPECT_GT(PolygonArea(hull), 0.0);
  EXPECT_DOUBLE_EQ(PolygonArea(hull), 4.0);
}

TEST(ClusterPointsTest, SeparatesByRadius) {
  const std::vector<Vec2> points = {{0, 0}, {0.5, 0}, {1.0, 0}, {5, 5}, {5.6, 5}};
  auto clusters = ClusterPoints(points, 0.7);
  ASSERT_EQ(clusters.size(), 2u);
  std::sort(clusters.begin(), clusters.end());
  EXPECT_EQ(clusters[0], (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(clusters[1], (std::vector<int>{3, 4}));
}

TEST(ClusterPointsTest, MatchesBruteForceComponents) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<Vec2> points;
  for (int k = 0; k < 300; ++k) points.push_back({u(rng), u(rng)});
  const double r = 0.7;
  // Brute-force labels by repeated relaxation.
  std::vector<int> label(points.size());
  std::iota(label.begin(), label.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < points.size(); ++i) {
      for (size_t j = 0; j < points.size(); ++j) {
        if (Norm(points[i] - points[j]) < r && label[j] < label[i]) {
          label[i] = label[j];
          changed = true;
        }
      }
    }
  }
  std::set<int> distinct(label.begin(), label.end());
  const auto clusters = ClusterPoints(points, r);
  EXPECT_EQ(clusters.size(), distinct.size());
  for (const auto& cluster : clusters) {
    for (int i : cluster) EXPECT_EQ(label[i], label[cluster[0]]);
  }
}

PointCloudFrame ScanNoiseFree(const WorldState& state) {
  std::mt19937_64 rng(1);
  return ApplyGeofence(Scan(state, testing::NoiseFreeLidar(), rng), Geofence{});
}

TEST(DetectorTest, EmptyFrameGivesNoDetections) {
  EXPECT_TRUE(DetectObjects(PointCloudFrame{}, DetectorParams{}).empty());
  EXPECT_TRUE(DetectObjects(ScanNoiseFree(WorldState{}), DetectorParams{}).empty());
}

TEST(DetectorTest, SingleCarCenterAndYaw) {
  const testing::DetectorScene scene = testing::NoiseFreeScenes()[1];
  const std::vector<Detection> dets =
      DetectObjects(ScanNoiseFree(scene.state), DetectorParams{});
  ASSERT_EQ(dets.size(), 1u);
  const AgentState& car = scene.state.agents[0];
  EXPECT_EQ(dets[0].cls, AgentClass::kCar);
  EXPECT_LE(Norm(dets[0].box.center() - car.pose.position()), 0.3);
  const double yaw_error = std::abs(std::remainder(dets[0].box.yaw - car.pose.yaw, kPi));
  EXPECT_LE(yaw_error, 5.0 * kPi / 180.0);
}

TEST(DetectorTest, TwoCarsTenMetresApart) {
  WorldState state;
  for (int k = 0; k < 2; ++k) {
    AgentState car;
    car.id = k + 1;
    car.pose = {15.0, -5.0 + 10.0 * k, 0.0};
    car.dims = DefaultDimensions(AgentClass::kCar);
    state.agents.push_back(car);
  }
  EXPECT_EQ(DetectObjects(ScanNoiseFree(state), DetectorParams{}).size(), 2u);
}

TEST(DetectorTest, NoiseFreeSceneSuite) {
  for (const testing::DetectorScene& scene : testing::NoiseFreeScenes()) {
    SCOPED_TRACE(scene.name);
    auto stage = PerceptionStage::Create(testing::NoiseFreeLidar(), Geofence{},
                                         "reference", DetectorParams{}, 1);
    ASSERT_TRUE(stage.ok()) << stage.status();
    const PerceptionOutput out = stage->Run(scene.state);
    ASSERT_EQ(out.truth.size(), scene.state.agents.size());
    const EvalReport report = Evaluate(out.detections, out.truth, 0.5);
    EXPECT_EQ(report.precision, 1.0);
    EXPECT_EQ(report.recall, 1.0);
    for (const LabeledBox& label : out.truth) {
      double best = INFINITY;
      for (const Detection& det : out.detections) {
        best = std::min(best, Norm(det.box.center() - Vec2{label.x, label.y}));
      }
      EXPECT_LE(best, 0.3) << "agent " << label.agent_id;
    }
  }
}

TEST(DetectorTest, ConfidenceSaturatesAtReferenceCount) {
  const testing::DetectorScene scene = testing::NoiseFreeScenes()[0];
  for (const Detection& det : DetectObjects(ScanNoiseFree(scene.state), DetectorParams{})) {
    EXPECT_GT(det.confidence, 0.0);
    EXPECT_LE(det.confidence, 1.0);
  }
}

TEST(DetectorTest, IdealDetectorEchoesLabels) {
  const std::vector<LabeledBox> labels = FiveLabels();
  const IdealDetector detector;
  const std::vector<Detection> dets = detector.Detect({nullptr, labels});
  ASSERT_EQ(dets.size(), labels.size());
  for (size_t k = 0; k < labels.size(); ++k) {
    EXPECT_EQ(dets[k].box, labels[k].footprint());
    EXPECT_EQ(dets[k].confidence, 1.0);
  }
  EXPECT_FALSE(MakeDetector("yolo", DetectorParams{}).ok());
}

}  // namespace
}  // namespace cmm

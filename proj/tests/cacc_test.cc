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
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "cmm/cacc/cacc_controller.h"
#include "cmm/cacc/case_study.h"
#include "cmm/cacc/leader_estimator.h"
#include "cmm/common/config_file.h"
#include "cmm/scenario/idm.h"
#include "gtest/gtest.h"

namespace cmm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

AgentState Car(int id, double station, double speed) {
  AgentState a;
  a.id = id;
  a.station = station;
  a.pose = {station, 0.0, 0.0};
  a.speed = speed;
  return a;
}

// Eastbound lane along the x axis; sensor 5 m to its right, facing east.
Lane TestLane() {
  Lane lane;
  lane.origin = {0.0, 0.0};
  lane.heading = 0.0;
  lane.length = 200.0;
  return lane;
}

SensorMount TestSensor() { return {0.0, -5.0, 0.0, 1.73}; }

MirrorSnapshot SnapshotWith(uint64_t frame_id, std::vector<Vec2> world_centers) {
  MirrorSnapshot s;
  s.frame_id = frame_id;
  s.sim_time_ms = static_cast<int64_t>(frame_id) * 100;
  s.staleness_ms = 0.0;
  const SensorMount m = TestSensor();
  for (Vec2 c : world_centers) {
    MirroredObject o;
    o.x = c.x - m.x;
    o.y = c.y - m.y;
    o.length = 4.5;
    o.width = 1.8;
    o.confidence = 0.9;
    o.frame_id = frame_id;
    s.objects.push_back(o);
  }
  return s;
}

LeaderEstimate Estimate(PerceptionScheme scheme, const MirrorSnapshot& snapshot,
                        const AgentState& follower, const LeaderEstimate& previous,
                        double now_ms) {
  return EstimateLeaderFromMirror(scheme, snapshot, TestSensor(), TestLane(),
                                  follower, previous, EstimatorParams{}, now_ms);
}

TEST(LeaderEstimatorTest, IdealPassesThroughGroundTruth) {
  WorldState state;
  state.agents = {Car(1, 0.0, 5.0), Car(2, 34.5, 8.0)};
  const LeaderEstimate e = EstimateLeaderFromTruth(state, state.agents[0]);
  EXPECT_EQ(e.status, LeaderStatus::kPresent);
  EXPECT_DOUBLE_EQ(e.speed, 8.0);
  EXPECT_DOUBLE_EQ(EstimatedGap(state.agents[0], e), 30.0);
}

TEST(LeaderEstimatorTest, IdealPicksNearestAheadInSameLane) {
  WorldState state;
  AgentState other_lane = Car(4, 10.0, 1.0);
  other_lane.lane_id = 1;
  AgentState walker = Car(5, 12.0, 1.0);
  walker.cls = AgentClass::kPedestrian;
  state.agents = {Car(1, 20.0, 5.0), Car(2, 60.0, 3.0), Car(3, 40.0, 6.0),
                  other_lane, walker, Car(6, 5.0, 9.0)};
  state.agents[0].station = 0.0;
  const LeaderEstimate e = EstimateLeaderFromTruth(state, state.agents[0]);
  EXPECT_EQ(e.status, LeaderStatus::kPresent);
  EXPECT_DOUBLE_EQ(e.speed, 9.0);

  const LeaderEstimate none = EstimateLeaderFromTruth(state, state.agents[1]);
  EXPECT_EQ(none.status, LeaderStatus::kAbsent);
  EXPECT_EQ(EstimatedGap(state.agents[1], none), kInf);
}

TEST(LeaderEstimatorTest, MirrorHitGivesFrontBumperGap) {
  const AgentState follower = Car(1, 0.0, 5.0);
  const LeaderEstimate e = Estimate(PerceptionScheme::kAuthentic,
                                    SnapshotWith(1, {{34.5, 0.2}}), follower, {}, 100.0);
  EXPECT_EQ(e.status, LeaderStatus::kPresent);
  EXPECT_NEAR(EstimatedGap(follower, e), 30.0, 1e-9);
  EXPECT_EQ(e.frame_id, 1u);
}

TEST(LeaderEstimatorTest, LaneGateAndBehindObjectsIgnored) {
  const AgentState follower = Car(1, 50.0, 5.0);
  // Adjacent lane, behind the follower, and overlapping the follower's nose.
  const MirrorSnapshot s = SnapshotWith(1, {{70.0, 3.5}, {40.0, 0.0}, {52.0, 0.0}});
  const LeaderEstimate e = Estimate(PerceptionScheme::kAuthentic, s, follower, {}, 100.0);
  EXPECT_EQ(e.status, LeaderStatus::kAbsent);
}

TEST(LeaderEstimatorTest, SpeedFromConsecutiveFrames) {
  const AgentState follower = Car(1, 0.0, 5.0);
  const LeaderEstimate first = Estimate(PerceptionScheme::kAuthentic,
                                        SnapshotWith(1, {{30.0, 0.0}}), follower, {}, 100.0);
  const LeaderEstimate second = Estimate(PerceptionScheme::kAuthentic,
                                         SnapshotWith(2, {{30.8, 0.0}}), follower, first,
                                         200.0);
  EXPECT_NEAR(second.speed, 8.0, 1e-9);
}

TEST(LeaderEstimatorTest, AuthenticMissIsAbsent) {
  const AgentState follower = Car(1, 0.0, 5.0);
  const LeaderEstimate hit = Estimate(PerceptionScheme::kAuthentic,
                                      SnapshotWith(1, {{30.0, 0.0}}), follower, {}, 100.0);
  const LeaderEstimate miss = Estimate(PerceptionScheme::kAuthentic, SnapshotWith(2, {}),
                                       follower, hit, 200.0);
  EXPECT_EQ(miss.status, LeaderStatus::kAbsent);
  EXPECT_EQ(miss.frame_id, 2u);
}

TEST(LeaderEstimatorTest, NoNewFrameIsAMiss) {
  const AgentState follower = Car(1, 0.0, 5.0);
  const MirrorSnapshot s = SnapshotWith(1, {{30.0, 0.0}});
  const LeaderEstimate hit = Estimate(PerceptionScheme::kAuthentic, s, follower, {}, 100.0);
  EXPECT_EQ(Estimate(PerceptionScheme::kAuthentic, s, follower, hit, 200.0).status,
            LeaderStatus::kAbsent);
  EXPECT_EQ(Estimate(PerceptionScheme::kAuthenticSafe, s, follower, hit, 200.0).status,
            LeaderStatus::kHeld);
  EXPECT_EQ(Estimate(PerceptionScheme::kAuthentic, MirrorSnapshot{}, follower, {}, 0.0)
                .status,
            LeaderStatus::kAbsent);
}

TEST(LeaderEstimatorTest, SafeMissHoldsLastPositionAtStandstill) {
  const AgentState follower = Car(1, 0.0, 5.0);
  const LeaderEstimate first = Estimate(PerceptionScheme::kAuthenticSafe,
                                        SnapshotWith(1, {{117.75, 0.0}}), follower, {}, 100.0);
  const LeaderEstimate second = Estimate(PerceptionScheme::kAuthenticSafe,
                                         SnapshotWith(2, {{117.75, 0.0}}), follower, first,
                                         200.0);
  ASSERT_DOUBLE_EQ(second.position, 120.0);
  ASSERT_DOUBLE_EQ(second.speed, 0.0);
  LeaderEstimate prev = second;
  prev.speed = 6.0;
  const LeaderEstimate held = Estimate(PerceptionScheme::kAuthenticSafe, SnapshotWith(3, {}),
                                       follower, prev, 300.0);
  EXPECT_EQ(held.status, LeaderStatus::kHeld);
  EXPECT_DOUBLE_EQ(held.position, 120.0);
  EXPECT_DOUBLE_EQ(held.speed, 0.0);
  EXPECT_DOUBLE_EQ(held.last_update_ms, prev.last_update_ms);
  EXPECT_FALSE(held.expired);

  // Holding continues across further misses without refreshing the age.
  const LeaderEstimate again = Estimate(PerceptionScheme::kAuthenticSafe, SnapshotWith(4, {}),
                                        follower, held, 400.0);
  EXPECT_EQ(again.status, LeaderStatus::kHeld);
  EXPECT_DOUBLE_EQ(again.last_update_ms, prev.last_update_ms);
}

TEST(LeaderEstimatorTest, HeldLeaderExpires) {
  const AgentState follower = Car(1, 0.0, 5.0);
  LeaderEstimate held;
  held.status = LeaderStatus::kHeld;
  held.position = 60.0;
  held.length = 4.5;
  held.last_update_ms = 1000.0;
  held.frame_id = 10;
  const EstimatorParams params;
  const double edge = 1000.0 + params.held_horizon_ms;
  EXPECT_EQ(Estimate(PerceptionScheme::kAuthenticSafe, SnapshotWith(11, {}), follower, held,
                     edge)
                .status,
            LeaderStatus::kHeld);
  const LeaderEstimate gone = Estimate(PerceptionScheme::kAuthenticSafe, SnapshotWith(11, {}),
                                       follower, held, edge + 100.0);
  EXPECT_EQ(gone.status, LeaderStatus::kAbsent);
  EXPECT_TRUE(gone.expired);
}

TEST(LeaderEstimatorTest, SchemeNamesRoundTrip) {
  for (PerceptionScheme s : {PerceptionScheme::kIdeal, PerceptionScheme::kAuthentic,
                             PerceptionScheme::kAuthenticSafe}) {
    absl::StatusOr<PerceptionScheme> parsed =
        ParsePerceptionScheme(std::string(PerceptionSchemeName(s)));
    ASSERT_TRUE(parsed.ok());
    EXPECT_EQ(*parsed, s);
  }
  EXPECT_EQ(*ParsePerceptionScheme("AP-S"), PerceptionScheme::kAuthenticSafe);
  EXPECT_FALSE(ParsePerceptionScheme("XP").ok());
}

TEST(CaccControllerTest, AbsentLeaderAccelerates) {
  const IdmParams params;
  const IdmCommand c = CaccStep(Car(1, 0.0, 5.0), LeaderEstimate{}, params);
  EXPECT_GT(c.accel, 0.0);
  EXPECT_NEAR(c.accel, params.max_accel * (1.0 - std::pow(5.0 / 15.0, 4.0)), 1e-12);
}

TEST(CaccControllerTest, CloseHeldLeaderBrakes) {
  LeaderEstimate held;
  held.status = LeaderStatus::kHeld;
  held.position = 14.0;
  held.length = 4.5;
  const IdmCommand c = CaccStep(Car(1, 0.0, 5.0), held, IdmParams{});
  EXPECT_LT(c.accel, 0.0);
  EXPECT_FALSE(c.collision_imminent);
}

TEST(CaccControllerTest, EquilibriumGapGivesZeroAccel) {
  const IdmParams params;
  const double v = 8.0;
  const double s_eq = (params.min_gap + v * params.time_headway) /
                      std::sqrt(1.0 - std::pow(v / params.desired_speed, 4.0));
  LeaderEstimate e;
  e.status = LeaderStatus::kPresent;
  e.speed = v;
  e.length = 4.5;
  const AgentState f = Car(1, 0.0, v);
  e.position = 2.25 + s_eq + e.length;
  EXPECT_NEAR(EstimatedGap(f, e), s_eq, 1e-12);
  EXPECT_NEAR(CaccStep(f, e, params).accel, 0.0, 1e-9);
}

class CaseStudyTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    absl::StatusOr<ConfigFile> file =
        ConfigFile::FromFile(CMM_SOURCE_DIR "/configs/occlusion_case_study.ini");
    ASSERT_TRUE(file.ok()) << file.status();
    absl::StatusOr<CaseStudyConfig> config = ParseCaseStudyConfig(*file);
    ASSERT_TRUE(config.ok()) << config.status();
    config_ = new CaseStudyConfig(*config);
    absl::StatusOr<CaseStudyResult> result = RunCaseStudy(*config_, false);
    ASSERT_TRUE(result.ok()) << result.status();
    result_ = new CaseStudyResult(std::move(*result));
  }
  static void TearDownTestSuite() {
    delete config_;
    delete result_;
  }

  const TrajectoryLog& Log(PerceptionScheme s) { return result_->runs.at(s).log; }

  static CaseStudyConfig* config_;
  static CaseStudyResult* result_;
};

CaseStudyConfig* CaseStudyTest::config_ = nullptr;
CaseStudyResult* CaseStudyTest::result_ = nullptr;

double MeanAccel(const TrajectoryLog& log, size_t begin, size_t end) {
  double sum = 0.0;
  for (size_t i = begin; i < end; ++i) sum += log.rows[i].a;
  return sum / static_cast<double>(end - begin);
}

TEST_F(CaseStudyTest, AllSchemesLogEveryTick) {
  for (PerceptionScheme s : config_->schemes) {
    EXPECT_EQ(static_cast<int64_t>(Log(s).rows.size()), config_->duration_ticks);
  }
}

TEST_F(CaseStudyTest, IdealPerceptionNeverMisses) {
  EXPECT_TRUE(MissWindows(Log(PerceptionScheme::kIdeal)).empty());
  EXPECT_EQ(result_->runs.at(PerceptionScheme::kIdeal).collision_events, 0);
}

TEST_F(CaseStudyTest, OcclusionCausesMisses) {
  EXPECT_FALSE(MissWindows(Log(PerceptionScheme::kAuthentic)).empty());
  EXPECT_EQ(MissWindows(Log(PerceptionScheme::kAuthentic)),
            MissWindows(Log(PerceptionScheme::kAuthenticSafe)));
}

TEST_F(CaseStudyTest, ProgressiveOutAcceleratesConservativeInMissWindows) {
  const TrajectoryLog& ap = Log(PerceptionScheme::kAuthentic);
  const TrajectoryLog& aps = Log(PerceptionScheme::kAuthenticSafe);
  int long_windows = 0;
  for (auto [begin, end] : MissWindows(ap)) {
    if (end - begin <= 3) continue;
    ++long_windows;
    EXPECT_GT(MeanAccel(ap, begin, end), MeanAccel(aps, begin, end))
        << "window [" << begin << ", " << end << ")";
  }
  EXPECT_GT(long_windows, 0);
}

TEST_F(CaseStudyTest, MissesAmplifySpeedFluctuation) {
  const double ip = TotalVariation(Log(PerceptionScheme::kIdeal));
  EXPECT_GE(TotalVariation(Log(PerceptionScheme::kAuthentic)), 1.5 * ip);
  EXPECT_GE(TotalVariation(Log(PerceptionScheme::kAuthenticSafe)), 1.5 * ip);
}

TEST_F(CaseStudyTest, ConservativeSchemeKeepsLargerGap) {
  double ap_min = kInf;
  double aps_min = kInf;
  for (const TrajectoryRow& r : Log(PerceptionScheme::kAuthentic).rows) {
    ap_min = std::min(ap_min, r.true_gap);
  }
  for (const TrajectoryRow& r : Log(PerceptionScheme::kAuthenticSafe).rows) {
    aps_min = std::min(aps_min, r.true_gap);
  }
  EXPECT_GE(aps_min, ap_min);
  EXPECT_GT(aps_min, 0.0);
}

TEST_F(CaseStudyTest, RunIsDeterministic) {
  absl::StatusOr<SchemeRun> again =
      RunScheme(*config_, PerceptionScheme::kAuthentic, config_->channel);
  ASSERT_TRUE(again.ok());
  std::ostringstream a, b;
  WriteTrajectoryCsv(Log(PerceptionScheme::kAuthentic), a);
  WriteTrajectoryCsv(again->log, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST_F(CaseStudyTest, TotalDropMeansFreeRoad) {
  ChannelConfig channel = config_->channel;
  channel.drop_threshold = 1.0;
  CaseStudyConfig short_run = *config_;
  short_run.duration_ticks = 30;
  absl::StatusOr<SchemeRun> run = RunScheme(short_run, PerceptionScheme::kAuthentic, channel);
  ASSERT_TRUE(run.ok());
  EXPECT_EQ(run->channel.delivered, 0);
  for (const TrajectoryRow& r : run->log.rows) {
    EXPECT_EQ(r.status, LeaderStatus::kAbsent);
    EXPECT_EQ(r.estimated_gap, kInf);
  }
}

TEST_F(CaseStudyTest, SummaryAndPlotDataCoverSchemes) {
  const std::string summary = FormatFluctuationSummary(*result_);
  for (PerceptionScheme s : config_->schemes) {
    EXPECT_NE(summary.find(std::string(PerceptionSchemeName(s))), std::string::npos);
  }
  std::vector<const TrajectoryLog*> logs;
  for (PerceptionScheme s : config_->schemes) logs.push_back(&Log(s));
  std::ostringstream plot;
  WritePlotData(logs, plot);
  const std::string text = plot.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'),
            1 + config_->duration_ticks);
}

TEST_F(CaseStudyTest, IdealGapSettlesIntoIdmBand) {
  const IdmParams& idm = config_->scenario.idm;
  const TrajectoryLog& log = Log(PerceptionScheme::kIdeal);
  for (size_t i = log.rows.size() / 2; i < log.rows.size(); ++i) {
    const TrajectoryRow& r = log.rows[i];
    EXPECT_GE(r.true_gap, idm.min_gap) << "tick " << r.tick;
    EXPECT_LE(r.true_gap, idm.min_gap + r.v * idm.time_headway + 1.0) << "tick " << r.tick;
  }
}

TEST_F(CaseStudyTest, SafeSchemeNeverClosesOnHeldLeader) {
  const IdmParams& idm = config_->scenario.idm;
  int held_close = 0;
  for (const TrajectoryRow& r : Log(PerceptionScheme::kAuthenticSafe).rows) {
    if (r.status != LeaderStatus::kHeld) continue;
    if (r.estimated_gap >= IdmDesiredGap(r.v, 0.0, idm)) continue;
    ++held_close;
    EXPECT_LE(r.a, 0.0) << "tick " << r.tick;
  }
  EXPECT_GT(held_close, 0);
}

TEST(CaccControllerTest, HeldLeaderInsideDesiredGapNeverAccelerates) {
  const IdmParams params;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> speed(0.0, 20.0), frac(0.01, 0.999);
  for (int k = 0; k < 10000; ++k) {
    const AgentState f = Car(1, 0.0, speed(rng));
    LeaderEstimate held;
    held.status = LeaderStatus::kHeld;
    held.length = 4.5;
    const double gap = frac(rng) * IdmDesiredGap(f.speed, 0.0, params);
    held.position = 2.25 + gap + held.length;
    EXPECT_LE(CaccStep(f, held, params).accel, 0.0) << f.speed << " " << gap;
  }
}

TEST(TotalVariationTest, SumsAbsoluteSpeedSteps) {
  TrajectoryLog log;
  for (double v : {1.0, 3.0, 2.0, 2.0, 5.0}) {
    TrajectoryRow r;
    r.v = v;
    log.rows.push_back(r);
  }
  EXPECT_DOUBLE_EQ(TotalVariation(log), 6.0);
  EXPECT_EQ(TotalVariation(TrajectoryLog{}), 0.0);
}

TEST(MissWindowsTest, FindsMaximalRuns) {
  TrajectoryLog log;
  for (LeaderStatus s : {LeaderStatus::kPresent, LeaderStatus::kAbsent, LeaderStatus::kHeld,
                         LeaderStatus::kPresent, LeaderStatus::kAbsent}) {
    TrajectoryRow r;
    r.status = s;
    log.rows.push_back(r);
  }
  const std::vector<std::pair<size_t, size_t>> expected = {{1, 3}, {4, 5}};
  EXPECT_EQ(MissWindows(log), expected);
}

TEST(CaseStudyConfigTest, RejectsBadValues) {
  absl::StatusOr<ConfigFile> file =
      ConfigFile::FromFile(CMM_SOURCE_DIR "/configs/occlusion_case_study.ini");
  ASSERT_TRUE(file.ok());
  ConfigFile bad = *file;
  bad.Set("case_study.duration_ticks", "-1");
  EXPECT_FALSE(ParseCaseStudyConfig(bad).ok());
  bad = *file;
  bad.Set("case_study.schemes", "IP, XX");
  EXPECT_FALSE(ParseCaseStudyConfig(bad).ok());
  bad = *file;
  bad.Set("case_study.follower", "nobody");
  EXPECT_FALSE(ParseCaseStudyConfig(bad).ok());
}

}  // namespace
}  // namespace cmm

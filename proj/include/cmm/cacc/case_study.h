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

#ifndef CMM_CACC_CASE_STUDY_H_
#define CMM_CACC_CASE_STUDY_H_

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "cmm/cacc/leader_estimator.h"
#include "cmm/common/config_file.h"
#include "cmm/common/geofence.h"
#include "cmm/lidar/lidar_config.h"
#include "cmm/mirror/mirror_registry.h"
#include "cmm/perception/detector.h"
#include "cmm/perception/perception_stage.h"
#include "cmm/protocol/channel.h"
#include "cmm/scenario/scenario.h"

namespace cmm {

struct CaseStudyConfig {
  ScenarioConfig scenario;
  LidarConfig lidar;
  Geofence region;
  std::string detector = "reference";
  DetectorParams detector_params;
  ChannelConfig channel;
  std::vector<PerceptionScheme> schemes = {PerceptionScheme::kIdeal,
                                           PerceptionScheme::kAuthentic,
                                           PerceptionScheme::kAuthenticSafe};
  int64_t duration_ticks = 100;
  std::string follower;  // agent name; empty runs without a controlled vehicle
  std::string sensor_id = "rsu-0";
  EstimatorParams estimator;
  // Impairment sweeps, run with `sweep_scheme`. Delay sweep values are fixed
  // delays (no innate part, no jitter); drop sweep values are thresholds.
  PerceptionScheme sweep_scheme = PerceptionScheme::kAuthentic;
  std::vector<double> delay_sweep_ms = {0.0, 100.0, 200.0};
  std::vector<double> drop_sweep = {0.0, 0.05, 0.10};

  absl::Status Validate() const;
};

// Reads the scenario sections plus [lidar], [geofence], [channel] and
// [case_study].
absl::StatusOr<CaseStudyConfig> ParseCaseStudyConfig(const ConfigFile& file);

struct TrajectoryRow {
  int64_t tick = 0;
  double t = 0.0;  // s
  double x = 0.0;  // follower station, m
  double v = 0.0;
  double a = 0.0;  // acceleration applied over [t, t + dt)
  LeaderStatus status = LeaderStatus::kAbsent;
  double estimated_gap = 0.0;  // +inf when Absent
  double true_gap = 0.0;       // +inf without a true leader
  bool hit() const { return status == LeaderStatus::kPresent; }
};

struct TrajectoryLog {
  PerceptionScheme scheme = PerceptionScheme::kIdeal;
  std::vector<TrajectoryRow> rows;
  int64_t held_expiries = 0;
  int64_t emergency_events = 0;
};

struct SchemeRun {
  TrajectoryLog log;
  ChannelStats channel;
  int64_t stale_frames = 0;
  int64_t protocol_errors = 0;
  int64_t collision_events = 0;
};

// Everything produced during one lockstep tick, for artifact writers.
struct TickRecord {
  int64_t tick = 0;
  double now_ms = 0.0;
  const WorldState* state = nullptr;
  const PerceptionOutput* perception = nullptr;
  const MirrorSnapshot* snapshot = nullptr;
  const LeaderEstimate* estimate = nullptr;  // null without a follower
};
using TickObserver = std::function<void(const TickRecord&)>;

// Runs the full pipeline (world, LiDAR, detection, channel, mirror,
// estimation, control) for one scheme on the deterministic channel.
absl::StatusOr<SchemeRun> RunScheme(const CaseStudyConfig& config,
                                    PerceptionScheme scheme,
                                    const ChannelConfig& channel,
                                    const TickObserver& observer = nullptr);

struct SweepPoint {
  double value = 0.0;  // delay in ms or drop threshold
  SchemeRun run;
};

struct CaseStudyResult {
  std::map<PerceptionScheme, SchemeRun> runs;
  std::vector<SweepPoint> delay_sweep;
  std::vector<SweepPoint> drop_sweep;
};

// Fills the delay and drop sweeps of `result` with `sweep_scheme` runs.
absl::Status RunImpairmentSweeps(const CaseStudyConfig& config,
                                 CaseStudyResult& result);

absl::StatusOr<CaseStudyResult> RunCaseStudy(const CaseStudyConfig& config,
                                             bool with_sweeps);

// Sum of |v[k+1] - v[k]| over the log.
double TotalVariation(const TrajectoryLog& log);

// Maximal runs of consecutive miss rows as [begin, end) row indices.
std::vector<std::pair<size_t, size_t>> MissWindows(const TrajectoryLog& log);

// tick,t,x,v,a,status,leader,estimated_gap,true_gap
void WriteTrajectoryCsv(const TrajectoryLog& log, std::ostream& out);

// Aligned per-tick series for several logs: t, then x/v/a/hit per log.
void WritePlotData(std::span<const TrajectoryLog* const> logs, std::ostream& out);

// Speed-fluctuation metrics per run as a fixed-width table.
std::string FormatFluctuationSummary(const CaseStudyResult& result);

}  // namespace cmm

#endif  // CMM_CACC_CASE_STUDY_H_

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

#include "cmm/cacc/case_study.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "cmm/cacc/cacc_controller.h"
#include "cmm/common/status_macros.h"
#include "cmm/common/text_format.h"
#include "cmm/protocol/codec.h"
#include "cmm/protocol/perception_frame.h"

namespace cmm {
namespace {

absl::StatusOr<std::vector<double>> ParseDoubleList(const std::string& key,
                                                    const std::string& text) {
  std::vector<double> values;
  for (absl::string_view piece : absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    double v = 0.0;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(piece), &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat(key, ": '", std::string(piece), "' is not a number"));
    }
    values.push_back(v);
  }
  return values;
}

std::string Cell(double v) {
  return std::isfinite(v) ? FormatDouble(v) : std::string("inf");
}

}  // namespace

absl::Status CaseStudyConfig::Validate() const {
  CMM_RETURN_IF_ERROR(scenario.Validate());
  CMM_RETURN_IF_ERROR(lidar.Validate());
  CMM_RETURN_IF_ERROR(region.Validate());
  CMM_RETURN_IF_ERROR(channel.Validate());
  if (duration_ticks <= 0) {
    return absl::InvalidArgumentError("duration_ticks must be positive");
  }
  if (schemes.empty()) {
    return absl::InvalidArgumentError("at least one perception scheme is required");
  }
  if (!(estimator.lane_gate > 0.0) || !(estimator.held_horizon_ms >= 0.0)) {
    return absl::InvalidArgumentError("lane_gate must be > 0, held horizon >= 0");
  }
  for (double d : delay_sweep_ms) {
    if (!(d >= 0.0)) return absl::InvalidArgumentError("delay sweep values must be >= 0");
  }
  for (double eta : drop_sweep) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      return absl::InvalidArgumentError("drop sweep values must lie in [0, 1]");
    }
  }
  if (!follower.empty()) {
    const bool known = std::any_of(
        scenario.agents.begin(), scenario.agents.end(),
        [&](const AgentSpec& a) { return a.name == follower; });
    if (!known) {
      return absl::InvalidArgumentError(
          absl::StrCat("follower '", follower, "' is not a declared agent"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<CaseStudyConfig> ParseCaseStudyConfig(const ConfigFile& file) {
  CaseStudyConfig c;
  CMM_ASSIGN_OR_RETURN(c.scenario, ParseScenarioConfig(file));
  CMM_ASSIGN_OR_RETURN(c.lidar, ParseLidarConfig(file));
  CMM_ASSIGN_OR_RETURN(c.region, ParseGeofence(file));
  ChannelConfig channel_defaults;
  channel_defaults.seed = c.scenario.seed;
  CMM_ASSIGN_OR_RETURN(c.channel, ParseChannelConfig(file, channel_defaults));

  CMM_ASSIGN_OR_RETURN(c.duration_ticks,
                       file.GetInt("case_study.duration_ticks", c.duration_ticks));
  c.detector = file.GetString("case_study.detector", c.detector);
  c.follower = file.GetString("case_study.follower", c.follower);
  c.sensor_id = file.GetString("case_study.sensor_id", c.sensor_id);
  CMM_ASSIGN_OR_RETURN(c.estimator.lane_gate,
                       file.GetDouble("case_study.lane_gate", c.estimator.lane_gate));
  CMM_ASSIGN_OR_RETURN(
      const double horizon_s,
      file.GetDouble("case_study.held_horizon_s", c.estimator.held_horizon_ms / 1000.0));
  c.estimator.held_horizon_ms = horizon_s * 1000.0;

  if (file.Has("case_study.schemes")) {
    c.schemes.clear();
    for (absl::string_view name :
         absl::StrSplit(file.GetString("case_study.schemes", ""), ',',
                        absl::SkipWhitespace())) {
      CMM_ASSIGN_OR_RETURN(PerceptionScheme s, ParsePerceptionScheme(std::string(
                                                   absl::StripAsciiWhitespace(name))));
      if (std::find(c.schemes.begin(), c.schemes.end(), s) == c.schemes.end()) {
        c.schemes.push_back(s);
      }
    }
  }
  CMM_ASSIGN_OR_RETURN(
      c.sweep_scheme,
      ParsePerceptionScheme(file.GetString("case_study.sweep_scheme", "AP")));
  if (file.Has("case_study.delay_sweep_ms")) {
    CMM_ASSIGN_OR_RETURN(c.delay_sweep_ms,
                         ParseDoubleList("case_study.delay_sweep_ms",
                                         file.GetString("case_study.delay_sweep_ms", "")));
  }
  if (file.Has("case_study.drop_sweep")) {
    CMM_ASSIGN_OR_RETURN(c.drop_sweep,
                         ParseDoubleList("case_study.drop_sweep",
                                         file.GetString("case_study.drop_sweep", "")));
  }
  CMM_RETURN_IF_ERROR(c.Validate());
  return c;
}

absl::StatusOr<SchemeRun> RunScheme(const CaseStudyConfig& config,
                                    PerceptionScheme scheme,
                                    const ChannelConfig& channel_config,
                                    const TickObserver& observer) {
  CMM_RETURN_IF_ERROR(config.Validate());
  CMM_RETURN_IF_ERROR(channel_config.Validate());
  CMM_ASSIGN_OR_RETURN(Scenario scenario, Scenario::Create(config.scenario));
  CMM_ASSIGN_OR_RETURN(
      PerceptionStage perception,
      PerceptionStage::Create(config.lidar, config.region, config.detector,
                              config.detector_params, config.scenario.seed));

  ChannelConfig timed = channel_config;
  timed.tick_ms = std::round(scenario.dt() * 1000.0);
  DeterministicChannel channel(timed);
  MirrorRegistry registry;

  std::optional<int> follower_id;
  if (!config.follower.empty()) follower_id = scenario.AgentIdForName(config.follower);

  SchemeRun run;
  run.log.scheme = scheme;
  LeaderEstimate estimate;
  WorldState state = scenario.initial_state();

  for (int64_t tick = 0; tick < config.duration_ticks; ++tick) {
    // Whole milliseconds keep tick-boundary arithmetic exact.
    const double now_ms = std::round(static_cast<double>(tick) * scenario.dt() * 1000.0);
    const PerceptionOutput perceived = perception.Run(state);

    const PerceptionFrame frame =
        MakePerceptionFrame(static_cast<uint64_t>(tick) + 1, static_cast<int64_t>(now_ms),
                            config.sensor_id, perceived.detections);
    channel.Send(Encode(frame), frame.frame_id, now_ms);
    for (const ChannelMessage& message : channel.Poll(now_ms)) {
      const DecodeResult decoded = DecodeFramed(message.bytes);
      if (decoded.outcome == DecodeOutcome::kFrame) {
        registry.Apply(decoded.frame, now_ms);
      } else {
        ++run.protocol_errors;
      }
    }
    const MirrorSnapshot snapshot = registry.Query(now_ms, &config.region);

    AccelCommands commands;
    const AgentState* follower =
        follower_id.has_value() ? state.Find(*follower_id) : nullptr;
    if (follower != nullptr) {
      if (scheme == PerceptionScheme::kIdeal) {
        estimate = EstimateLeaderFromTruth(state, *follower);
      } else {
        estimate = EstimateLeaderFromMirror(scheme, snapshot, config.lidar.mount,
                                            scenario.lane(follower->lane_id),
                                            *follower, estimate, config.estimator,
                                            now_ms);
      }
      if (estimate.expired) ++run.log.held_expiries;
      const IdmCommand command = CaccStep(*follower, estimate, config.scenario.idm);
      if (command.collision_imminent) ++run.log.emergency_events;
      commands[follower->id] = command.accel;
    }

    if (observer) {
      TickRecord record;
      record.tick = tick;
      record.now_ms = now_ms;
      record.state = &state;
      record.perception = &perceived;
      record.snapshot = &snapshot;
      record.estimate = follower != nullptr ? &estimate : nullptr;
      observer(record);
    }

    WorldState next = scenario.Step(state, commands);
    if (follower != nullptr) {
      TrajectoryRow row;
      row.tick = tick;
      row.t = state.sim_time();
      row.x = follower->station;
      row.v = follower->speed;
      const AgentState* moved = next.Find(follower->id);
      row.a = moved != nullptr ? moved->accel : commands[follower->id];
      row.status = estimate.status;
      row.estimated_gap = EstimatedGap(*follower, estimate);
      row.true_gap = EstimatedGap(*follower, EstimateLeaderFromTruth(state, *follower));
      run.log.rows.push_back(row);
    }
    state = std::move(next);
  }

  run.channel = channel.stats();
  run.stale_frames = registry.stale();
  run.collision_events = state.collision_events;
  return run;
}

absl::Status RunImpairmentSweeps(const CaseStudyConfig& config,
                                 CaseStudyResult& result) {
  result.delay_sweep.clear();
  result.drop_sweep.clear();
  for (double delay : config.delay_sweep_ms) {
    ChannelConfig c = config.channel;
    c.innate_delay_ms = 0.0;
    c.acd_mean_ms = delay;
    c.acd_std_ms = 0.0;
    CMM_ASSIGN_OR_RETURN(SchemeRun run, RunScheme(config, config.sweep_scheme, c));
    result.delay_sweep.push_back({delay, std::move(run)});
  }
  for (double eta : config.drop_sweep) {
    ChannelConfig c = config.channel;
    c.drop_threshold = eta;
    CMM_ASSIGN_OR_RETURN(SchemeRun run, RunScheme(config, config.sweep_scheme, c));
    result.drop_sweep.push_back({eta, std::move(run)});
  }
  return absl::OkStatus();
}

absl::StatusOr<CaseStudyResult> RunCaseStudy(const CaseStudyConfig& config,
                                             bool with_sweeps) {
  CaseStudyResult result;
  for (PerceptionScheme scheme : config.schemes) {
    CMM_ASSIGN_OR_RETURN(result.runs[scheme], RunScheme(config, scheme, config.channel));
  }
  if (with_sweeps) CMM_RETURN_IF_ERROR(RunImpairmentSweeps(config, result));
  return result;
}

double TotalVariation(const TrajectoryLog& log) {
  double tv = 0.0;
  for (size_t i = 1; i < log.rows.size(); ++i) {
    tv += std::abs(log.rows[i].v - log.rows[i - 1].v);
  }
  return tv;
}

std::vector<std::pair<size_t, size_t>> MissWindows(const TrajectoryLog& log) {
  std::vector<std::pair<size_t, size_t>> windows;
  size_t i = 0;
  while (i < log.rows.size()) {
    if (log.rows[i].hit()) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < log.rows.size() && !log.rows[j].hit()) ++j;
    windows.emplace_back(i, j);
    i = j;
  }
  return windows;
}

void WriteTrajectoryCsv(const TrajectoryLog& log, std::ostream& out) {
  out << "tick,t,x,v,a,status,leader,estimated_gap,true_gap\n";
  for (const TrajectoryRow& r : log.rows) {
    out << r.tick << ',' << FormatDouble(r.t) << ',' << FormatDouble(r.x) << ','
        << FormatDouble(r.v) << ',' << FormatDouble(r.a) << ','
        << (r.hit() ? "hit" : "miss") << ',' << LeaderStatusName(r.status) << ','
        << Cell(r.estimated_gap) << ',' << Cell(r.true_gap) << '\n';
  }
}

void WritePlotData(std::span<const TrajectoryLog* const> logs, std::ostream& out) {
  out << 't';
  size_t rows = 0;
  for (const TrajectoryLog* log : logs) {
    const std::string name(PerceptionSchemeName(log->scheme));
    out << ",x_" << name << ",v_" << name << ",a_" << name << ",hit_" << name;
    rows = std::max(rows, log->rows.size());
  }
  out << '\n';
  for (size_t i = 0; i < rows; ++i) {
    bool have_time = false;
    for (const TrajectoryLog* log : logs) {
      if (i < log->rows.size()) {
        out << FormatDouble(log->rows[i].t);
        have_time = true;
        break;
      }
    }
    if (!have_time) continue;
    for (const TrajectoryLog* log : logs) {
      if (i < log->rows.size()) {
        const TrajectoryRow& r = log->rows[i];
        out << ',' << FormatDouble(r.x) << ',' << FormatDouble(r.v) << ','
            << FormatDouble(r.a) << ',' << (r.hit() ? 1 : 0);
      } else {
        out << ",,,,";
      }
    }
    out << '\n';
  }
}

std::string FormatFluctuationSummary(const CaseStudyResult& result) {
  std::string out = absl::StrFormat("%-18s %10s %10s %10s %7s %12s\n", "run",
                                    "TV(v)", "max|a|", "rms(a)", "misses",
                                    "min gap");
  auto line = [&out](const std::string& label, const SchemeRun& run) {
    double max_a = 0.0, sq = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    int misses = 0;
    for (const TrajectoryRow& r : run.log.rows) {
      max_a = std::max(max_a, std::abs(r.a));
      sq += r.a * r.a;
      min_gap = std::min(min_gap, r.true_gap);
      if (!r.hit()) ++misses;
    }
    const double rms =
        run.log.rows.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(run.log.rows.size()));
    absl::StrAppend(&out, absl::StrFormat("%-18s %10.3f %10.3f %10.3f %7d %12.3f\n",
                                          label, TotalVariation(run.log), max_a,
                                          rms, misses, min_gap));
  };
  for (const auto& [scheme, run] : result.runs) {
    line(std::string(PerceptionSchemeName(scheme)), run);
  }
  for (const SweepPoint& p : result.delay_sweep) {
    line(absl::StrCat(std::string(PerceptionSchemeName(p.run.log.scheme)), " delay=", p.value, "ms"),
         p.run);
  }
  for (const SweepPoint& p : result.drop_sweep) {
    line(absl::StrCat(std::string(PerceptionSchemeName(p.run.log.scheme)), " drop=", p.value), p.run);
  }
  return out;
}

}  // namespace cmm

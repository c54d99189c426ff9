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

#include "cmm/orchestrator/commands.h"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <csignal>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "cmm/cacc/case_study.h"
#include "cmm/common/status_macros.h"
#include "cmm/common/text_format.h"
#include "cmm/dataset/label_io.h"
#include "cmm/dataset/recorder.h"
#include "cmm/protocol/codec.h"
#include "cmm/protocol/socket_channel.h"
#include "cmm/version.h"
#include "json.hpp"

namespace cmm {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

absl::Status MakeDirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create ", dir.string(), ": ", ec.message()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::ofstream> OpenOut(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path.string()));
  return out;
}

absl::Status WriteFile(const fs::path& path, const std::string& text) {
  CMM_ASSIGN_OR_RETURN(std::ofstream out, OpenOut(path));
  out << text;
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path.string()));
  return absl::OkStatus();
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

// Creates the per-run directory. A named run must not clobber an existing
// non-empty directory; timestamped runs get a numeric suffix on collision.
absl::StatusOr<fs::path> CreateRunDir(const RunConfig& config) {
  const fs::path root(config.output_root);
  fs::path dir;
  if (!config.run_name.empty()) {
    dir = root / config.run_name;
    std::error_code ec;
    if (fs::exists(dir, ec) && !fs::is_empty(dir, ec)) {
      return absl::AlreadyExistsError(
          absl::StrCat("run directory already exists: ", dir.string()));
    }
  } else {
    const std::string stamp = UtcTimestamp();
    dir = root / stamp;
    for (int i = 2; fs::exists(dir); ++i) dir = root / absl::StrCat(stamp, "-", i);
  }
  CMM_RETURN_IF_ERROR(MakeDirs(dir));
  return dir;
}

std::string RunManifestJson(const RunConfig& config) {
  Json j;
  j["tool"] = "cmm";
  j["version"] = kVersion;
  j["mode"] = std::string(RunModeName(config.mode));
  j["seed"] = config.pipeline.scenario.seed;
  j["config_path"] = config.config_path;
  j["duration_ticks"] = config.pipeline.duration_ticks;
  j["schemes"] = Json::array();
  for (PerceptionScheme s : config.pipeline.schemes) {
    j["schemes"].push_back(std::string(PerceptionSchemeName(s)));
  }
  j["sweeps"] = config.sweeps;
  Json channel;
  channel["innate_delay_ms"] = config.pipeline.channel.innate_delay_ms;
  channel["acd_mean_ms"] = config.pipeline.channel.acd_mean_ms;
  channel["acd_std_ms"] = config.pipeline.channel.acd_std_ms;
  channel["drop_threshold"] = config.pipeline.channel.drop_threshold;
  channel["seed"] = config.pipeline.channel.seed;
  j["channel"] = channel;
  Json entries = Json::object();
  for (const auto& [key, value] : config.config_entries) entries[key] = value;
  j["config"] = entries;
  Json overrides = Json::object();
  for (const auto& [key, value] : config.overrides) overrides[key] = value;
  j["overrides"] = overrides;
  return j.dump(2) + "\n";
}

// Streams per-tick artifacts of one scheme run.
class TickArtifactWriter {
 public:
  static absl::StatusOr<std::unique_ptr<TickArtifactWriter>> Create(const fs::path& dir) {
    CMM_RETURN_IF_ERROR(MakeDirs(dir / "labels"));
    CMM_RETURN_IF_ERROR(MakeDirs(dir / "detections"));
    auto writer = std::unique_ptr<TickArtifactWriter>(new TickArtifactWriter(dir));
    CMM_ASSIGN_OR_RETURN(writer->ground_truth_, OpenOut(dir / "ground_truth.csv"));
    CMM_ASSIGN_OR_RETURN(writer->snapshots_, OpenOut(dir / "mirror_snapshots.jsonl"));
    WriteGroundTruthCsvHeader(writer->ground_truth_);
    return writer;
  }

  void Observe(const TickRecord& r) {
    if (!status_.ok()) return;
    AppendGroundTruthCsv(*r.state, ground_truth_);
    WriteSnapshotJsonl(r.tick, *r.snapshot, snapshots_);
    std::vector<LabelRecord> labels, detections;
    for (const LabeledBox& b : r.perception->truth) labels.push_back(FromLabeledBox(b));
    for (const Detection& d : r.perception->detections) {
      detections.push_back(FromDetection(d));
    }
    const std::string name = FrameStem(r.tick) + ".txt";
    status_.Update(WriteLabelFile((dir_ / "labels" / name).string(), labels));
    status_.Update(WriteLabelFile((dir_ / "detections" / name).string(), detections));
  }

  absl::Status Finish() {
    ground_truth_.close();
    snapshots_.close();
    if (!ground_truth_ || !snapshots_) {
      status_.Update(absl::DataLossError(absl::StrCat("write failed in ", dir_.string())));
    }
    return status_;
  }

 private:
  explicit TickArtifactWriter(fs::path dir) : dir_(std::move(dir)) {}

  fs::path dir_;
  std::ofstream ground_truth_;
  std::ofstream snapshots_;
  absl::Status status_;
};

absl::Status WriteSchemeSummaryFiles(const fs::path& dir, const SchemeRun& run) {
  std::ostringstream trajectory, stats;
  WriteTrajectoryCsv(run.log, trajectory);
  WriteChannelStatsCsv(run.channel, stats);
  CMM_RETURN_IF_ERROR(WriteFile(dir / "trajectory.csv", trajectory.str()));
  CMM_RETURN_IF_ERROR(WriteFile(dir / "channel_stats.csv", stats.str()));
  return absl::OkStatus();
}

std::string SchemeLine(const std::string& label, const SchemeRun& run) {
  int misses = 0;
  for (const TrajectoryRow& r : run.log.rows) misses += r.hit() ? 0 : 1;
  return absl::StrFormat(
      "%-18s sent=%d dropped=%d delivered=%d stale=%d misses=%d "
      "held_expiries=%d emergencies=%d collisions=%d\n",
      label, run.channel.sent, run.channel.dropped, run.channel.delivered,
      run.stale_frames, misses, run.log.held_expiries, run.log.emergency_events,
      run.collision_events);
}

absl::StatusOr<RunOutcome> RunDeterministic(const RunConfig& config,
                                            const fs::path& run_dir,
                                            std::ostream& log) {
  const CaseStudyConfig& pipeline = config.pipeline;
  CaseStudyResult result;
  for (PerceptionScheme scheme : pipeline.schemes) {
    const std::string name(PerceptionSchemeName(scheme));
    const fs::path dir = run_dir / name;
    CMM_ASSIGN_OR_RETURN(std::unique_ptr<TickArtifactWriter> writer,
                         TickArtifactWriter::Create(dir));
    log << "running " << name << " for " << pipeline.duration_ticks << " ticks\n";
    CMM_ASSIGN_OR_RETURN(
        SchemeRun run,
        RunScheme(pipeline, scheme, pipeline.channel,
                  [&writer](const TickRecord& r) { writer->Observe(r); }));
    CMM_RETURN_IF_ERROR(writer->Finish());
    CMM_RETURN_IF_ERROR(WriteSchemeSummaryFiles(dir, run));
    result.runs[scheme] = std::move(run);
  }

  if (config.sweeps) {
    log << "running impairment sweeps\n";
    CMM_RETURN_IF_ERROR(RunImpairmentSweeps(pipeline, result));
    for (const SweepPoint& p : result.delay_sweep) {
      const fs::path dir =
          run_dir / "sweeps" / absl::StrCat("delay_", FormatDouble(p.value), "ms");
      CMM_RETURN_IF_ERROR(MakeDirs(dir));
      CMM_RETURN_IF_ERROR(WriteSchemeSummaryFiles(dir, p.run));
    }
    for (const SweepPoint& p : result.drop_sweep) {
      const fs::path dir = run_dir / "sweeps" / absl::StrCat("drop_", FormatDouble(p.value));
      CMM_RETURN_IF_ERROR(MakeDirs(dir));
      CMM_RETURN_IF_ERROR(WriteSchemeSummaryFiles(dir, p.run));
    }
  }

  std::vector<const TrajectoryLog*> logs;
  for (const auto& [scheme, run] : result.runs) logs.push_back(&run.log);
  std::ostringstream plot;
  WritePlotData(logs, plot);
  CMM_RETURN_IF_ERROR(WriteFile(run_dir / "plot_data.csv", plot.str()));

  std::string summary;
  for (const auto& [scheme, run] : result.runs) {
    absl::StrAppend(&summary, SchemeLine(std::string(PerceptionSchemeName(scheme)), run));
  }
  absl::StrAppend(&summary, "\n", FormatFluctuationSummary(result));
  CMM_RETURN_IF_ERROR(WriteFile(run_dir / "summary.txt", summary));
  return RunOutcome{run_dir.string(), summary};
}

// Real-world side of the two-process mode: perception frames stream over
// TCP to the mirror; the controlled vehicle drives on its own IDM since the
// mirror's output does not flow back.
absl::StatusOr<RunOutcome> RunTwoProcess(const RunConfig& config,
                                         const fs::path& run_dir, std::ostream& log) {
  const CaseStudyConfig& pipeline = config.pipeline;
  const fs::path mirror_dir = run_dir / "mirror";
  CMM_RETURN_IF_ERROR(MakeDirs(mirror_dir));

  std::string host = config.mirror_host;
  uint16_t port = config.mirror_port;
  pid_t child = -1;
  if (host.empty()) {
    // Bind before forking so the sender can never race the listener.
    CMM_ASSIGN_OR_RETURN(TcpListener listener, TcpListener::Bind(0));
    host = "127.0.0.1";
    port = listener.port();
    log.flush();
    child = ::fork();
    if (child < 0) return absl::InternalError("fork failed");
    if (child == 0) {
      SocketReceiver receiver(std::move(listener));
      const absl::StatusOr<MirrorServeStats> served =
          ServeMirror(receiver, mirror_dir.string(), pipeline.region);
      ::_exit(ExitCodeFor(served.status()));
    }
  }

  CMM_ASSIGN_OR_RETURN(Scenario scenario, Scenario::Create(pipeline.scenario));
  CMM_ASSIGN_OR_RETURN(
      PerceptionStage perception,
      PerceptionStage::Create(pipeline.lidar, pipeline.region, pipeline.detector,
                              pipeline.detector_params, pipeline.scenario.seed));
  absl::StatusOr<std::unique_ptr<SocketSender>> sender =
      SocketSender::Connect(host, port, pipeline.channel);
  auto reap = [child]() -> int {
    if (child <= 0) return 0;
    int wstatus = 0;
    ::waitpid(child, &wstatus, 0);
    return WIFEXITED(wstatus) ? WEXITSTATUS(wstatus) : 1;
  };
  if (!sender.ok()) {
    if (child > 0) ::kill(child, SIGTERM);
    reap();
    return sender.status();
  }

  CMM_ASSIGN_OR_RETURN(std::ofstream ground_truth, OpenOut(run_dir / "ground_truth.csv"));
  WriteGroundTruthCsvHeader(ground_truth);
  log << "streaming " << pipeline.duration_ticks << " frames to " << host << ":" << port
      << "\n";
  WorldState state = scenario.initial_state();
  for (int64_t tick = 0; tick < pipeline.duration_ticks; ++tick) {
    const double now_ms = std::round(static_cast<double>(tick) * scenario.dt() * 1000.0);
    AppendGroundTruthCsv(state, ground_truth);
    const PerceptionOutput perceived = perception.Run(state);
    const PerceptionFrame frame =
        MakePerceptionFrame(static_cast<uint64_t>(tick) + 1, static_cast<int64_t>(now_ms),
                            pipeline.sensor_id, perceived.detections);
    (*sender)->Send(Encode(frame), frame.frame_id);
    state = scenario.Step(state);
  }
  ground_truth.close();
  const absl::Status transport = (*sender)->Close();
  const ChannelStats stats = (*sender)->stats();
  std::ostringstream stats_csv;
  WriteChannelStatsCsv(stats, stats_csv);
  CMM_RETURN_IF_ERROR(WriteFile(run_dir / "channel_stats.csv", stats_csv.str()));
  const int child_code = reap();

  std::string summary = absl::StrFormat(
      "sender: sent=%d dropped=%d delivered=%d lost=%d mean_delay_ms=%.3f\n",
      stats.sent, stats.dropped, stats.delivered, stats.lost, stats.mean_delay_ms());
  if (!transport.ok()) return transport;
  if (child > 0) {
    if (child_code != 0) {
      return absl::UnavailableError(
          absl::StrCat("mirror process exited with code ", child_code));
    }
    std::ifstream in(mirror_dir / "mirror_stats.json");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const Json j = Json::parse(buffer.str(), nullptr, false);
    if (j.is_discarded() || !j.contains("snapshots")) {
      return absl::InternalError("mirror statistics missing");
    }
    const int64_t snapshots = j["snapshots"].get<int64_t>();
    const int64_t expected = stats.sent - stats.dropped - stats.lost;
    absl::StrAppend(&summary,
                    absl::StrFormat("mirror: snapshots=%d expected=%d (%s)\n", snapshots,
                                    expected, snapshots == expected ? "reconciled"
                                                                    : "MISMATCH"));
    if (snapshots != expected) {
      CMM_RETURN_IF_ERROR(WriteFile(run_dir / "summary.txt", summary));
      return absl::DataLossError("mirror snapshot count does not match channel statistics");
    }
  }
  CMM_RETURN_IF_ERROR(WriteFile(run_dir / "summary.txt", summary));
  return RunOutcome{run_dir.string(), summary};
}

}  // namespace

absl::StatusOr<RunOutcome> CmdRun(const RunConfig& config, std::ostream& log) {
  CMM_RETURN_IF_ERROR(config.pipeline.Validate());
  CMM_ASSIGN_OR_RETURN(const fs::path run_dir, CreateRunDir(config));
  CMM_RETURN_IF_ERROR(WriteFile(run_dir / "run_manifest.json", RunManifestJson(config)));
  absl::StatusOr<RunOutcome> outcome =
      config.mode == RunMode::kDeterministic ? RunDeterministic(config, run_dir, log)
                                             : RunTwoProcess(config, run_dir, log);
  if (outcome.ok()) log << outcome->summary << "artifacts: " << outcome->run_dir << "\n";
  return outcome;
}

}  // namespace cmm

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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "cmm/common/config_file.h"
#include "cmm/common/status_macros.h"
#include "cmm/dataset/label_io.h"
#include "cmm/lidar/lidar_config.h"
#include "cmm/mirror/mirror_registry.h"
#include "cmm/protocol/codec.h"
#include "json.hpp"

namespace cmm {
namespace {

namespace fs = std::filesystem;

// Reads one label-format file and checks that every line does (detections)
// or does not (ground truth) carry a score.
absl::StatusOr<std::vector<LabelRecord>> ReadRecords(const fs::path& path,
                                                     bool expect_score) {
  CMM_ASSIGN_OR_RETURN(std::vector<LabelRecord> records, ReadLabelFile(path.string()));
  for (const LabelRecord& r : records) {
    if (r.score.has_value() != expect_score) {
      return absl::InvalidArgumentError(absl::StrCat(
          path.string(), ": schema mismatch, ",
          expect_score ? "detection lines need a trailing score"
                       : "label lines must not carry a score"));
    }
  }
  return records;
}

std::set<std::string> TxtFiles(const fs::path& dir) {
  std::set<std::string> names;
  for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".txt") {
      names.insert(e.path().filename().string());
    }
  }
  return names;
}

absl::StatusOr<FrameEvaluationInput> LoadFrame(const fs::path& detections,
                                               const fs::path& labels) {
  FrameEvaluationInput frame;
  if (fs::exists(detections)) {
    CMM_ASSIGN_OR_RETURN(std::vector<LabelRecord> dets, ReadRecords(detections, true));
    for (const LabelRecord& r : dets) frame.detections.push_back(ToDetection(r));
  }
  CMM_ASSIGN_OR_RETURN(std::vector<LabelRecord> gts, ReadRecords(labels, false));
  for (const LabelRecord& r : gts) frame.ground_truth.push_back(ToLabeledBox(r));
  return frame;
}

}  // namespace

absl::StatusOr<std::vector<EvalReport>> CmdEval(const std::string& detections,
                                                const std::string& labels,
                                                const std::vector<double>& iou_thresholds,
                                                const std::string& out_dir,
                                                std::ostream& log) {
  if (iou_thresholds.empty()) {
    return absl::InvalidArgumentError("at least one IoU threshold is required");
  }
  for (double t : iou_thresholds) {
    if (!(t > 0.0 && t <= 1.0)) {
      return absl::InvalidArgumentError("IoU thresholds must lie in (0, 1]");
    }
  }
  const fs::path det_path(detections), label_path(labels);
  if (!fs::exists(label_path)) {
    return absl::NotFoundError(absl::StrCat("labels not found: ", labels));
  }
  if (!fs::exists(det_path)) {
    return absl::NotFoundError(absl::StrCat("detections not found: ", detections));
  }

  std::vector<FrameEvaluationInput> frames;
  const bool dirs = fs::is_directory(det_path);
  if (dirs != fs::is_directory(label_path)) {
    return absl::InvalidArgumentError(
        "detections and labels must both be files or both be directories");
  }
  if (dirs) {
    const std::set<std::string> label_files = TxtFiles(label_path);
    for (const std::string& name : TxtFiles(det_path)) {
      if (!label_files.contains(name)) {
        return absl::InvalidArgumentError(
            absl::StrCat("schema mismatch: detection file ", name, " has no label file"));
      }
    }
    for (const std::string& name : label_files) {
      CMM_ASSIGN_OR_RETURN(FrameEvaluationInput frame,
                           LoadFrame(det_path / name, label_path / name));
      frames.push_back(std::move(frame));
    }
  } else {
    CMM_ASSIGN_OR_RETURN(FrameEvaluationInput frame, LoadFrame(det_path, label_path));
    frames.push_back(std::move(frame));
  }

  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
      return absl::PermissionDeniedError(absl::StrCat("cannot create ", out_dir));
    }
  }
  std::vector<EvalReport> reports;
  for (double threshold : iou_thresholds) {
    EvalReport report = EvaluateFrames(frames, threshold);
    log << FormatEvalTable(report) << "\n";
    if (!out_dir.empty()) {
      const fs::path path = fs::path(out_dir) /
                            absl::StrFormat("eval_iou%02d.csv",
                                            static_cast<int>(std::lround(threshold * 100)));
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path.string()));
      WriteEvalCsv(report, out);
    }
    reports.push_back(std::move(report));
  }
  log << "evaluated " << frames.size() << " frame(s)\n";
  return reports;
}

absl::StatusOr<DatasetManifest> CmdDataset(
    const std::string& config_path,
    const std::map<std::string, std::string>& overrides, std::ostream& log) {
  if (!fs::is_regular_file(config_path)) {
    return absl::NotFoundError(absl::StrCat("config file not found: ", config_path));
  }
  CMM_ASSIGN_OR_RETURN(ConfigFile file, ConfigFile::FromFile(config_path));
  for (const auto& [key, value] : overrides) file.Set(key, value);
  CMM_ASSIGN_OR_RETURN(ScenarioConfig scenario, ParseScenarioConfig(file));
  CMM_ASSIGN_OR_RETURN(LidarConfig lidar, ParseLidarConfig(file));
  CMM_ASSIGN_OR_RETURN(Geofence region, ParseGeofence(file));
  DatasetSpec defaults;
  defaults.split_seed = scenario.seed;
  CMM_ASSIGN_OR_RETURN(DatasetSpec spec, ParseDatasetSpec(file, defaults));
  CMM_ASSIGN_OR_RETURN(DatasetManifest manifest,
                       RecordDataset(scenario, lidar, region, spec));
  int64_t objects = 0;
  for (const DatasetFrame& f : manifest.frames) objects += f.num_objects;
  log << absl::StrFormat("wrote %d frames (%d labelled objects) to %s: train=%d val=%d\n",
                         manifest.frames.size(), objects, spec.out_dir,
                         manifest.split.train.size(), manifest.split.val.size());
  return manifest;
}

absl::Status CmdProtoDump(const std::string& out_path, std::ostream& log) {
  const std::vector<uint8_t> bytes = Encode(GoldenFrame());
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", out_path));
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", out_path));
  log << "wrote " << bytes.size() << " bytes to " << out_path << "\n";
  return absl::OkStatus();
}

absl::Status CmdProtoDecode(const std::string& path, std::ostream& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  const std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  size_t offset = 0;
  int decoded = 0;
  while (offset < bytes.size()) {
    const DecodeResult r =
        DecodeFramed(std::span<const uint8_t>(bytes).subspan(offset));
    if (r.outcome == DecodeOutcome::kIncomplete) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ": truncated message at byte ", offset));
    }
    if (r.outcome == DecodeOutcome::kProtocolError) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ": protocol error at byte ", offset, ": ", r.error));
    }
    out << EncodePayload(r.frame) << "\n";
    offset += r.consumed;
    ++decoded;
  }
  if (decoded == 0) return absl::InvalidArgumentError(absl::StrCat(path, ": no messages"));
  return absl::OkStatus();
}

absl::StatusOr<MirrorServeStats> ServeMirror(SocketReceiver& receiver,
                                             const std::string& out_dir,
                                             const Geofence& region) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  std::ofstream snapshots(fs::path(out_dir) / "mirror_snapshots.jsonl",
                          std::ios::binary | std::ios::trunc);
  if (!snapshots) {
    return absl::PermissionDeniedError(absl::StrCat("cannot write into ", out_dir));
  }
  const auto start = std::chrono::steady_clock::now();
  MirrorRegistry registry;
  MirrorServeStats stats;
  std::vector<PerceptionFrame> frames;
  while (receiver.WaitForFrames(frames)) {
    for (const PerceptionFrame& frame : frames) {
      const double now_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
      ++stats.received;
      registry.Apply(frame, now_ms);
      WriteSnapshotJsonl(static_cast<int64_t>(frame.frame_id) - 1,
                         registry.Query(now_ms, &region), snapshots);
      ++stats.snapshots;
    }
  }
  stats.accepted = registry.accepted();
  stats.stale = registry.stale();
  stats.protocol_errors = receiver.protocol_errors();
  stats.connections = receiver.connections();
  snapshots.close();

  nlohmann::ordered_json j;
  j["received"] = stats.received;
  j["accepted"] = stats.accepted;
  j["stale"] = stats.stale;
  j["protocol_errors"] = stats.protocol_errors;
  j["connections"] = stats.connections;
  j["snapshots"] = stats.snapshots;
  std::ofstream out(fs::path(out_dir) / "mirror_stats.json",
                    std::ios::binary | std::ios::trunc);
  out << j.dump(2) << "\n";
  out.close();
  if (!snapshots || !out) return absl::DataLossError("failed to write mirror artifacts");
  if (receiver.timed_out()) {
    return absl::UnavailableError("no sender connected to the mirror");
  }
  return stats;
}

}  // namespace cmm

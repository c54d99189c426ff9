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

#include "cmm/dataset/recorder.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "cmm/common/status_macros.h"
#include "cmm/dataset/label_io.h"
#include "cmm/lidar/lidar_model.h"
#include "cmm/perception/geofence_filter.h"
#include "json.hpp"

namespace cmm {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Ticks between recorded frames; requires record_hz to divide sim_hz.
absl::StatusOr<int64_t> RecordStride(double sim_hz, double record_hz) {
  const double ratio = sim_hz / record_hz;
  const double rounded = std::round(ratio);
  if (!(rounded >= 1.0) || std::abs(ratio - rounded) > 1e-9 * ratio) {
    return absl::InvalidArgumentError(absl::StrCat(
        "record rate ", record_hz, " Hz must divide the simulation rate ", sim_hz, " Hz"));
  }
  return static_cast<int64_t>(rounded);
}

absl::Status EnsureWritableDirectory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create ", dir.string(), ": ", ec.message()));
  }
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "ok")) {
      return absl::PermissionDeniedError(
          absl::StrCat("output directory not writable: ", dir.string()));
    }
  }
  fs::remove(probe, ec);
  return absl::OkStatus();
}

absl::Status WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path.string()));
  out << text;
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path.string()));
  return absl::OkStatus();
}

}  // namespace

absl::Status DatasetSpec::Validate(double sim_hz) const {
  if (!(record_hz > 0.0)) return absl::InvalidArgumentError("record_hz must be > 0");
  if (n_frames < 0) return absl::InvalidArgumentError("n_frames must be >= 0");
  if (ticks.has_value() && *ticks < 0) {
    return absl::InvalidArgumentError("ticks must be >= 0");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    return absl::InvalidArgumentError("train fraction must lie in (0, 1)");
  }
  if (out_dir.empty()) return absl::InvalidArgumentError("output directory is required");
  return RecordStride(sim_hz, record_hz).status();
}

absl::StatusOr<DatasetSpec> ParseDatasetSpec(const ConfigFile& file,
                                             DatasetSpec defaults) {
  DatasetSpec s = defaults;
  CMM_ASSIGN_OR_RETURN(s.record_hz, file.GetDouble("dataset.record_hz", s.record_hz));
  CMM_ASSIGN_OR_RETURN(s.n_frames, file.GetInt("dataset.n_frames", s.n_frames));
  if (file.Has("dataset.ticks")) {
    CMM_ASSIGN_OR_RETURN(s.ticks, file.GetInt("dataset.ticks", 0));
  }
  CMM_ASSIGN_OR_RETURN(s.train_fraction,
                       file.GetDouble("dataset.train_fraction", s.train_fraction));
  CMM_ASSIGN_OR_RETURN(const int64_t seed, file.GetInt("dataset.split_seed",
                                                       static_cast<int64_t>(s.split_seed)));
  s.split_seed = static_cast<uint64_t>(seed);
  s.out_dir = file.GetString("dataset.out_dir", s.out_dir);
  return s;
}

DataSplit MakeSplit(int64_t n, double train_fraction, uint64_t seed) {
  std::vector<int64_t> order(static_cast<size_t>(std::max<int64_t>(n, 0)));
  std::iota(order.begin(), order.end(), 0);
  // Explicit Fisher-Yates so the split does not depend on the standard
  // library's shuffle algorithm.
  std::mt19937_64 rng(seed);
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }
  const size_t n_train = static_cast<size_t>(
      std::llround(train_fraction * static_cast<double>(order.size())));
  DataSplit split;
  split.train.assign(order.begin(), order.begin() + n_train);
  split.val.assign(order.begin() + n_train, order.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.val.begin(), split.val.end());
  return split;
}

std::string FrameStem(int64_t index) { return absl::StrFormat("%06d", index); }

std::string ManifestToJson(const DatasetManifest& m) {
  Json j;
  j["version"] = m.version;
  j["sim_hz"] = m.sim_hz;
  j["record_hz"] = m.record_hz;
  j["scenario_seed"] = m.scenario_seed;
  j["split_seed"] = m.split_seed;
  j["train_fraction"] = m.train_fraction;
  j["frames"] = Json::array();
  for (const DatasetFrame& f : m.frames) {
    j["frames"].push_back({{"index", f.index},
                           {"tick", f.tick},
                           {"velodyne", f.velodyne},
                           {"label", f.label},
                           {"num_points", f.num_points},
                           {"num_objects", f.num_objects}});
  }
  j["train"] = m.split.train;
  j["val"] = m.split.val;
  return j.dump(2) + "\n";
}

absl::StatusOr<DatasetManifest> ManifestFromJson(const std::string& text) {
  const Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("manifest is not a JSON object");
  }
  DatasetManifest m;
  try {
    m.version = j.at("version").get<int>();
    m.sim_hz = j.at("sim_hz").get<double>();
    m.record_hz = j.at("record_hz").get<double>();
    m.scenario_seed = j.at("scenario_seed").get<uint64_t>();
    m.split_seed = j.at("split_seed").get<uint64_t>();
    m.train_fraction = j.at("train_fraction").get<double>();
    for (const Json& f : j.at("frames")) {
      m.frames.push_back({f.at("index").get<int64_t>(), f.at("tick").get<int64_t>(),
                          f.at("velodyne").get<std::string>(),
                          f.at("label").get<std::string>(),
                          f.at("num_points").get<int64_t>(),
                          f.at("num_objects").get<int64_t>()});
    }
    m.split.train = j.at("train").get<std::vector<int64_t>>();
    m.split.val = j.at("val").get<std::vector<int64_t>>();
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad manifest: ", e.what()));
  }
  return m;
}

absl::StatusOr<DatasetManifest> RecordDataset(const ScenarioConfig& scenario_config,
                                              const LidarConfig& lidar,
                                              const Geofence& region,
                                              const DatasetSpec& spec) {
  const double sim_hz = 1.0 / scenario_config.dt;
  CMM_RETURN_IF_ERROR(spec.Validate(sim_hz));
  CMM_RETURN_IF_ERROR(lidar.Validate());
  CMM_RETURN_IF_ERROR(region.Validate());
  CMM_ASSIGN_OR_RETURN(const int64_t stride, RecordStride(sim_hz, spec.record_hz));
  CMM_ASSIGN_OR_RETURN(Scenario scenario, Scenario::Create(scenario_config));

  const fs::path root(spec.out_dir);
  CMM_RETURN_IF_ERROR(EnsureWritableDirectory(root));
  CMM_RETURN_IF_ERROR(EnsureWritableDirectory(root / "velodyne"));
  CMM_RETURN_IF_ERROR(EnsureWritableDirectory(root / "label_2"));

  const int64_t ticks = spec.ticks.value_or(spec.n_frames * stride);
  DatasetManifest manifest;
  manifest.sim_hz = sim_hz;
  manifest.record_hz = spec.record_hz;
  manifest.scenario_seed = scenario_config.seed;
  manifest.split_seed = spec.split_seed;
  manifest.train_fraction = spec.train_fraction;

  std::mt19937_64 rng(scenario_config.seed);
  WorldState state = scenario.initial_state();
  for (int64_t k = 1; k <= ticks; ++k) {
    state = scenario.Step(state);
    if (k % stride != 0) continue;

    DatasetFrame frame;
    frame.index = static_cast<int64_t>(manifest.frames.size());
    frame.tick = state.tick;
    frame.velodyne = "velodyne/" + FrameStem(frame.index) + ".bin";
    frame.label = "label_2/" + FrameStem(frame.index) + ".txt";

    const PointCloudFrame cloud = ApplyGeofence(Scan(state, lidar, rng), region);
    CMM_RETURN_IF_ERROR(WriteVelodyneBin((root / frame.velodyne).string(), cloud.points));
    std::vector<LabelRecord> labels;
    for (const LabeledBox& box : GroundTruthObjects(state, lidar.mount, region)) {
      labels.push_back(FromLabeledBox(box));
    }
    CMM_RETURN_IF_ERROR(WriteLabelFile((root / frame.label).string(), labels));
    frame.num_points = static_cast<int64_t>(cloud.points.size());
    frame.num_objects = static_cast<int64_t>(labels.size());
    manifest.frames.push_back(frame);
  }
  manifest.split = MakeSplit(static_cast<int64_t>(manifest.frames.size()),
                             spec.train_fraction, spec.split_seed);
  CMM_RETURN_IF_ERROR(WriteText(root / "manifest.json", ManifestToJson(manifest)));
  return manifest;
}

}  // namespace cmm

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

#ifndef CMM_ORCHESTRATOR_COMMANDS_H_
#define CMM_ORCHESTRATOR_COMMANDS_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cmm/dataset/recorder.h"
#include "cmm/orchestrator/run_config.h"
#include "cmm/perception/evaluation.h"
#include "cmm/protocol/socket_channel.h"

namespace cmm {

struct RunOutcome {
  std::string run_dir;
  std::string summary;
};

// Executes the lockstep pipeline and writes every artifact under
// <output_root>/<run_name>/. Progress and the summary go to `log`.
absl::StatusOr<RunOutcome> CmdRun(const RunConfig& config, std::ostream& log);

// Evaluates detection files against label files. Both paths are either
// files or directories of NNNNNN.txt files paired by name. Writes
// eval_iouNN.csv into `out_dir` when it is not empty.
absl::StatusOr<std::vector<EvalReport>> CmdEval(const std::string& detections,
                                                const std::string& labels,
                                                const std::vector<double>& iou_thresholds,
                                                const std::string& out_dir,
                                                std::ostream& log);

// Records a dataset from the scenario, [lidar], [geofence] and [dataset]
// sections of `config_path`.
absl::StatusOr<DatasetManifest> CmdDataset(
    const std::string& config_path,
    const std::map<std::string, std::string>& overrides, std::ostream& log);

// Writes the framed golden message to `out_path`.
absl::Status CmdProtoDump(const std::string& out_path, std::ostream& log);

// Prints the JSON payload of every framed message in `path`.
absl::Status CmdProtoDecode(const std::string& path, std::ostream& out);

struct MirrorServeStats {
  int64_t received = 0;
  int64_t accepted = 0;
  int64_t stale = 0;
  int64_t protocol_errors = 0;
  int64_t connections = 0;
  int64_t snapshots = 0;
};

// Mirror role: applies every received frame, writes one snapshot line per
// received frame to <out_dir>/mirror_snapshots.jsonl and the counters to
// <out_dir>/mirror_stats.json. Returns Unavailable when no sender connects.
absl::StatusOr<MirrorServeStats> ServeMirror(SocketReceiver& receiver,
                                             const std::string& out_dir,
                                             const Geofence& region);

}  // namespace cmm

#endif  // CMM_ORCHESTRATOR_COMMANDS_H_

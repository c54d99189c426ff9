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

#ifndef CMM_ORCHESTRATOR_RUN_CONFIG_H_
#define CMM_ORCHESTRATOR_RUN_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cmm/cacc/case_study.h"

namespace cmm {

enum class RunMode {
  kDeterministic,  // one process, simulated channel clock
  kTwoProcess,     // mirror in a separate process behind a TCP channel
};

std::string_view RunModeName(RunMode mode);
absl::StatusOr<RunMode> ParseRunMode(std::string_view name);

struct RunConfig {
  RunMode mode = RunMode::kDeterministic;
  std::string config_path;
  CaseStudyConfig pipeline;
  bool sweeps = false;
  std::string output_root = "runs";
  std::string run_name;  // empty: UTC timestamp
  // Two-process mode: connect to an already running mirror instead of
  // forking one.
  std::string mirror_host;
  uint16_t mirror_port = 0;

  // Echo of the configuration for the run manifest.
  std::vector<std::pair<std::string, std::string>> config_entries;
  std::map<std::string, std::string> overrides;
};

// Loads `path`, applies "section.key" overrides on top and parses the
// pipeline plus the [run] section (mode, sweeps, output_dir).
absl::StatusOr<RunConfig> LoadRunConfig(
    const std::string& path, const std::map<std::string, std::string>& overrides);

// Process exit code for a command status: 0 success, 2 configuration error,
// 3 transport failure, 1 anything else.
int ExitCodeFor(const absl::Status& status);

}  // namespace cmm

#endif  // CMM_ORCHESTRATOR_RUN_CONFIG_H_

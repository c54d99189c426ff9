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

#include "cmm/orchestrator/run_config.h"

#include <filesystem>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "cmm/common/config_file.h"
#include "cmm/common/status_macros.h"

namespace cmm {

std::string_view RunModeName(RunMode mode) {
  switch (mode) {
    case RunMode::kDeterministic:
      return "deterministic";
    case RunMode::kTwoProcess:
      return "two-process";
  }
  return "?";
}

absl::StatusOr<RunMode> ParseRunMode(std::string_view name) {
  const std::string lower = absl::AsciiStrToLower(std::string(name));
  if (lower == "deterministic" || lower == "single-process") {
    return RunMode::kDeterministic;
  }
  if (lower == "two-process" || lower == "sockets") return RunMode::kTwoProcess;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown run mode '", std::string(name), "' (deterministic | two-process)"));
}

absl::StatusOr<RunConfig> LoadRunConfig(
    const std::string& path, const std::map<std::string, std::string>& overrides) {
  if (!std::filesystem::is_regular_file(path)) {
    return absl::NotFoundError(absl::StrCat("config file not found: ", path));
  }
  CMM_ASSIGN_OR_RETURN(ConfigFile file, ConfigFile::FromFile(path));
  for (const auto& [key, value] : overrides) file.Set(key, value);

  RunConfig config;
  config.config_path = path;
  config.overrides = overrides;
  config.config_entries = file.Entries();
  CMM_ASSIGN_OR_RETURN(config.mode,
                       ParseRunMode(file.GetString("run.mode", "deterministic")));
  CMM_ASSIGN_OR_RETURN(config.sweeps, file.GetBool("run.sweeps", false));
  config.output_root = file.GetString("run.output_dir", config.output_root);
  CMM_ASSIGN_OR_RETURN(config.pipeline, ParseCaseStudyConfig(file));
  return config;
}

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 0;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kAlreadyExists:
    case absl::StatusCode::kPermissionDenied:
      return 2;
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kDeadlineExceeded:
    case absl::StatusCode::kAborted:
      return 3;
    default:
      return 1;
  }
}

}  // namespace cmm

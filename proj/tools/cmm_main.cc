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

// Command-line entry point: run, eval, dataset, proto-dump, mirror.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "cmm/common/text_format.h"
#include "cmm/orchestrator/commands.h"
#include "cmm/orchestrator/run_config.h"
#include "cmm/version.h"

namespace {

int Fail(const absl::Status& status) {
  std::cerr << "cmm: " << status.message() << "\n";
  return cmm::ExitCodeFor(status);
}

// Records `value` under `key` when the flag was given on the command line.
template <typename T>
void OverrideIfSet(const CLI::Option* option, const std::string& key, const T& value,
                   std::map<std::string, std::string>& overrides) {
  if (option->count() == 0) return;
  if constexpr (std::is_same_v<T, std::string>) {
    overrides[key] = value;
  } else if constexpr (std::is_same_v<T, bool>) {
    overrides[key] = value ? "true" : "false";
  } else if constexpr (std::is_floating_point_v<T>) {
    overrides[key] = cmm::FormatDouble(value);
  } else {
    overrides[key] = std::to_string(value);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Roadside perception to mirror co-simulation toolkit"};
  app.set_version_flag("--version", std::string(cmm::kVersion));
  app.require_subcommand(1);

  // run ---------------------------------------------------------------------
  CLI::App* run = app.add_subcommand("run", "Run the lockstep pipeline");
  std::string run_config;
  std::string mode, out_dir, run_name, schemes, detector;
  uint64_t seed = 0;
  int64_t duration = 0;
  double innate = 150.0, acd_mean = 50.0, acd_std = 5.0, drop = 0.0;
  bool sweeps = false;
  std::string mirror_host;
  int mirror_port = 0;
  run->add_option("config", run_config, "Scenario/run config file")->required();
  auto* o_mode = run->add_option("--mode", mode, "deterministic | two-process");
  auto* o_out = run->add_option("--out", out_dir, "Root directory for run artifacts (runs)");
  run->add_option("--run-name", run_name, "Run directory name (default: UTC timestamp)");
  auto* o_seed = run->add_option("--seed", seed, "Seed for scenario, LiDAR and channel");
  auto* o_duration = run->add_option("--duration", duration, "Number of ticks");
  auto* o_schemes = run->add_option("--schemes", schemes, "Comma list of IP, AP, APS");
  auto* o_detector = run->add_option("--detector", detector, "reference | ideal");
  auto* o_innate = run->add_option("--innate-delay-ms", innate, "Innate delay (150)");
  auto* o_mean = run->add_option("--acd-mean-ms", acd_mean, "Active delay mean (50)");
  auto* o_std = run->add_option("--acd-std-ms", acd_std, "Active delay std (5)");
  auto* o_drop = run->add_option("--drop", drop, "Drop threshold: 0, 0.05, 0.10, ...");
  auto* o_sweeps = run->add_flag("--sweeps", sweeps, "Also run the delay and drop sweeps");
  run->add_option("--mirror-host", mirror_host,
                  "Two-process mode: connect to a running mirror instead of forking");
  run->add_option("--mirror-port", mirror_port, "Port of the running mirror");

  // eval --------------------------------------------------------------------
  CLI::App* eval = app.add_subcommand("eval", "Evaluate detections against labels");
  std::string detections, labels, eval_out;
  std::vector<double> ious = {0.5, 0.75};
  eval->add_option("detections", detections, "Detection file or directory")->required();
  eval->add_option("labels", labels, "Label file or directory")->required();
  eval->add_option("--iou", ious, "IoU thresholds")->capture_default_str();
  eval->add_option("--out", eval_out, "Directory for eval_iouNN.csv");

  // dataset -----------------------------------------------------------------
  CLI::App* dataset = app.add_subcommand("dataset", "Record a LiDAR dataset");
  std::string dataset_config, dataset_out;
  int64_t frames = 0, ticks = 0;
  double record_hz = 2.0, train_fraction = 0.8;
  uint64_t dataset_seed = 0;
  dataset->add_option("config", dataset_config, "Scenario config file")->required();
  auto* o_dout = dataset->add_option("--out", dataset_out, "Dataset root directory");
  auto* o_frames = dataset->add_option("--frames", frames, "Frames to record (200)");
  auto* o_ticks = dataset->add_option("--ticks", ticks, "Simulate exactly this many ticks");
  auto* o_rec = dataset->add_option("--record-hz", record_hz, "Recording rate (2)");
  auto* o_train = dataset->add_option("--train-fraction", train_fraction,
                                      "Training share of the split (0.8)");
  auto* o_dseed = dataset->add_option("--seed", dataset_seed, "Scenario and split seed");

  // proto-dump --------------------------------------------------------------
  CLI::App* proto = app.add_subcommand("proto-dump", "Write or decode wire fixtures");
  std::string proto_out, proto_decode;
  proto->add_option("--out", proto_out, "Write the golden framed message here");
  proto->add_option("--decode", proto_decode, "Print the payloads of a framed file");

  // mirror ------------------------------------------------------------------
  CLI::App* mirror = app.add_subcommand("mirror", "Serve the mirror side over TCP");
  int port = 0;
  std::string mirror_out = "mirror";
  int idle_ms = 10000;
  mirror->add_option("--port", port, "Listen port on 127.0.0.1 (0 = ephemeral)");
  mirror->add_option("--out", mirror_out, "Directory for snapshots and stats")
      ->capture_default_str();
  mirror->add_option("--idle-timeout-ms", idle_ms, "Wait this long for a sender")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run) {
    std::map<std::string, std::string> overrides;
    OverrideIfSet(o_mode, "run.mode", mode, overrides);
    OverrideIfSet(o_out, "run.output_dir", out_dir, overrides);
    OverrideIfSet(o_seed, "scenario.seed", seed, overrides);
    OverrideIfSet(o_seed, "channel.seed", seed, overrides);
    OverrideIfSet(o_duration, "case_study.duration_ticks", duration, overrides);
    OverrideIfSet(o_schemes, "case_study.schemes", schemes, overrides);
    OverrideIfSet(o_detector, "case_study.detector", detector, overrides);
    OverrideIfSet(o_innate, "channel.innate_delay_ms", innate, overrides);
    OverrideIfSet(o_mean, "channel.acd_mean_ms", acd_mean, overrides);
    OverrideIfSet(o_std, "channel.acd_std_ms", acd_std, overrides);
    OverrideIfSet(o_drop, "channel.drop_threshold", drop, overrides);
    OverrideIfSet(o_sweeps, "run.sweeps", sweeps, overrides);
    absl::StatusOr<cmm::RunConfig> config = cmm::LoadRunConfig(run_config, overrides);
    if (!config.ok()) return Fail(config.status());
    config->run_name = run_name;
    if (!mirror_host.empty()) {
      if (mirror_port <= 0 || mirror_port > 65535) {
        return Fail(absl::InvalidArgumentError("--mirror-port must be in 1..65535"));
      }
      config->mirror_host = mirror_host;
      config->mirror_port = static_cast<uint16_t>(mirror_port);
    }
    const absl::StatusOr<cmm::RunOutcome> outcome = cmm::CmdRun(*config, std::cout);
    return outcome.ok() ? 0 : Fail(outcome.status());
  }

  if (*eval) {
    const auto reports = cmm::CmdEval(detections, labels, ious, eval_out, std::cout);
    return reports.ok() ? 0 : Fail(reports.status());
  }

  if (*dataset) {
    std::map<std::string, std::string> overrides;
    OverrideIfSet(o_dout, "dataset.out_dir", dataset_out, overrides);
    OverrideIfSet(o_frames, "dataset.n_frames", frames, overrides);
    OverrideIfSet(o_ticks, "dataset.ticks", ticks, overrides);
    OverrideIfSet(o_rec, "dataset.record_hz", record_hz, overrides);
    OverrideIfSet(o_train, "dataset.train_fraction", train_fraction, overrides);
    OverrideIfSet(o_dseed, "scenario.seed", dataset_seed, overrides);
    OverrideIfSet(o_dseed, "dataset.split_seed", dataset_seed, overrides);
    const auto manifest = cmm::CmdDataset(dataset_config, overrides, std::cout);
    return manifest.ok() ? 0 : Fail(manifest.status());
  }

  if (*proto) {
    if (proto_out.empty() == proto_decode.empty()) {
      return Fail(absl::InvalidArgumentError("give exactly one of --out or --decode"));
    }
    const absl::Status s = proto_out.empty()
                               ? cmm::CmdProtoDecode(proto_decode, std::cout)
                               : cmm::CmdProtoDump(proto_out, std::cout);
    return s.ok() ? 0 : Fail(s);
  }

  if (*mirror) {
    if (port < 0 || port > 65535) {
      return Fail(absl::InvalidArgumentError("--port must be in 0..65535"));
    }
    absl::StatusOr<cmm::TcpListener> listener =
        cmm::TcpListener::Bind(static_cast<uint16_t>(port));
    if (!listener.ok()) return Fail(listener.status());
    std::cout << "mirror listening on 127.0.0.1:" << listener->port() << std::endl;
    cmm::SocketReceiver receiver(*std::move(listener), std::chrono::milliseconds(1000),
                                 std::chrono::milliseconds(idle_ms));
    const auto stats = cmm::ServeMirror(receiver, mirror_out, cmm::Geofence{});
    if (!stats.ok()) return Fail(stats.status());
    std::cout << "received " << stats->received << " frames, accepted "
              << stats->accepted << ", stale " << stats->stale << "\n";
    return 0;
  }
  return 0;
}

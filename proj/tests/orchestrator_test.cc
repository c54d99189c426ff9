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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cmm/dataset/label_io.h"
#include "cmm/orchestrator/commands.h"
#include "cmm/orchestrator/run_config.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

namespace cmm {
namespace {

namespace fs = std::filesystem;

const std::string kOcclusion = CMM_SOURCE_DIR "/configs/occlusion_case_study.ini";

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cmm_orchestrator_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Relative path -> contents for every regular file under `root`.
std::map<std::string, std::string> Tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      files[fs::relative(entry.path(), root).string()] = Slurp(entry.path());
    }
  }
  return files;
}

RunConfig LoadOrDie(const std::string& path, std::map<std::string, std::string> overrides) {
  absl::StatusOr<RunConfig> config = LoadRunConfig(path, overrides);
  EXPECT_TRUE(config.ok()) << config.status();
  return *config;
}

int RunCli(const std::string& args) {
  const std::string command =
      std::string(CMM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(RunConfigTest, OverridesApplyOnTopOfFile) {
  const RunConfig config = LoadOrDie(
      kOcclusion, {{"case_study.duration_ticks", "17"}, {"scenario.seed", "99"},
                   {"run.mode", "two-process"}});
  EXPECT_EQ(config.pipeline.duration_ticks, 17);
  EXPECT_EQ(config.pipeline.scenario.seed, 99u);
  EXPECT_EQ(config.mode, RunMode::kTwoProcess);
  EXPECT_EQ(config.overrides.size(), 3u);
  EXPECT_FALSE(config.config_entries.empty());
}

TEST(RunConfigTest, ErrorsMapToExitCodes) {
  absl::StatusOr<RunConfig> missing = LoadRunConfig("/nonexistent/run.ini", {});
  ASSERT_FALSE(missing.ok());
  EXPECT_EQ(ExitCodeFor(missing.status()), 2);

  absl::StatusOr<RunConfig> mode = LoadRunConfig(kOcclusion, {{"run.mode", "warp"}});
  ASSERT_FALSE(mode.ok());
  EXPECT_EQ(ExitCodeFor(mode.status()), 2);

  absl::StatusOr<RunConfig> duration =
      LoadRunConfig(kOcclusion, {{"case_study.duration_ticks", "0"}});
  ASSERT_FALSE(duration.ok());
  EXPECT_EQ(ExitCodeFor(duration.status()), 2);

  EXPECT_EQ(ExitCodeFor(absl::OkStatus()), 0);
  EXPECT_EQ(ExitCodeFor(absl::UnavailableError("peer")), 3);
  EXPECT_EQ(ExitCodeFor(absl::DeadlineExceededError("slow")), 3);
  EXPECT_EQ(ExitCodeFor(absl::InternalError("bug")), 1);
  EXPECT_EQ(ExitCodeFor(absl::DataLossError("io")), 1);
}

TEST(RunModeTest, NamesRoundTrip) {
  for (RunMode m : {RunMode::kDeterministic, RunMode::kTwoProcess}) {
    EXPECT_EQ(*ParseRunMode(RunModeName(m)), m);
  }
  EXPECT_EQ(*ParseRunMode("sockets"), RunMode::kTwoProcess);
}

TEST(CmdRunTest, DeterministicRunsAreByteIdentical) {
  const fs::path root = FreshDir("determinism");
  std::map<std::string, std::string> overrides = {
      {"case_study.duration_ticks", "40"},
      {"run.output_dir", root.string()},
      {"channel.innate_delay_ms", "150"},
      {"channel.acd_mean_ms", "50"},
      {"channel.acd_std_ms", "5"},
      {"channel.drop_threshold", "0.1"}};
  RunConfig a = LoadOrDie(kOcclusion, overrides);
  a.run_name = "a";
  RunConfig b = a;
  b.run_name = "b";
  std::ostringstream log;
  absl::StatusOr<RunOutcome> ra = CmdRun(a, log);
  absl::StatusOr<RunOutcome> rb = CmdRun(b, log);
  ASSERT_TRUE(ra.ok()) << ra.status();
  ASSERT_TRUE(rb.ok()) << rb.status();
  const auto ta = Tree(ra->run_dir);
  const auto tb = Tree(rb->run_dir);
  EXPECT_GT(ta.size(), 10u);
  EXPECT_EQ(ta, tb);
  for (const char* f : {"run_manifest.json", "summary.txt", "plot_data.csv",
                        "IP/trajectory.csv", "AP/mirror_snapshots.jsonl",
                        "APS/channel_stats.csv", "AP/ground_truth.csv",
                        "AP/labels/000000.txt", "AP/detections/000039.txt"}) {
    EXPECT_TRUE(ta.contains(f)) << f;
  }
}

TEST(CmdRunTest, NamedRunRefusesToOverwrite) {
  const fs::path root = FreshDir("clobber");
  RunConfig config =
      LoadOrDie(kOcclusion, {{"case_study.duration_ticks", "2"},
                             {"case_study.schemes", "IP"},
                             {"run.output_dir", root.string()}});
  config.run_name = "same";
  std::ostringstream log;
  ASSERT_TRUE(CmdRun(config, log).ok());
  absl::StatusOr<RunOutcome> again = CmdRun(config, log);
  ASSERT_FALSE(again.ok());
  EXPECT_EQ(ExitCodeFor(again.status()), 2);
}

TEST(CmdRunTest, TimestampedRunsDoNotCollide) {
  const fs::path root = FreshDir("stamps");
  RunConfig config =
      LoadOrDie(kOcclusion, {{"case_study.duration_ticks", "1"},
                             {"case_study.schemes", "IP"},
                             {"run.output_dir", root.string()}});
  std::ostringstream log;
  absl::StatusOr<RunOutcome> first = CmdRun(config, log);
  absl::StatusOr<RunOutcome> second = CmdRun(config, log);
  ASSERT_TRUE(first.ok());
  ASSERT_TRUE(second.ok());
  EXPECT_NE(first->run_dir, second->run_dir);
}

TEST(CmdRunTest, OneTickEmptyScenarioGivesEmptyLogs) {
  const fs::path root = FreshDir("empty");
  const fs::path ini = root / "empty.ini";
  std::ofstream(ini) << "[scenario]\nseed = 3\n[signal]\nenabled = false\n"
                        "[demand]\nvehicles = 0\npedestrians = 0\n"
                        "[case_study]\nduration_ticks = 1\nschemes = IP\n"
                        "detector = reference\n";
  RunConfig config = LoadOrDie(ini.string(), {{"run.output_dir", root.string()}});
  config.run_name = "run";
  std::ostringstream log;
  absl::StatusOr<RunOutcome> outcome = CmdRun(config, log);
  ASSERT_TRUE(outcome.ok()) << outcome.status();
  const fs::path dir = fs::path(outcome->run_dir) / "IP";
  EXPECT_EQ(Slurp(dir / "ground_truth.csv"), "tick,id,class,x,y,yaw,v,a\n");
  const nlohmann::json snapshot = nlohmann::json::parse(Slurp(dir / "mirror_snapshots.jsonl"));
  EXPECT_EQ(snapshot["tick"], 0);
  EXPECT_TRUE(snapshot["objects"].empty());
  absl::StatusOr<std::vector<LabelRecord>> labels =
      ReadLabelFile((dir / "labels" / "000000.txt").string());
  ASSERT_TRUE(labels.ok());
  EXPECT_TRUE(labels->empty());
  // No follower: the trajectory has only its header.
  const std::string trajectory = Slurp(dir / "trajectory.csv");
  EXPECT_EQ(std::count(trajectory.begin(), trajectory.end(), '\n'), 1);
}

TEST(CmdRunTest, ManifestEchoesConfiguration) {
  const fs::path root = FreshDir("manifest");
  RunConfig config =
      LoadOrDie(kOcclusion, {{"case_study.duration_ticks", "1"},
                             {"case_study.schemes", "IP"},
                             {"scenario.seed", "12"},
                             {"run.output_dir", root.string()}});
  config.run_name = "m";
  std::ostringstream log;
  absl::StatusOr<RunOutcome> outcome = CmdRun(config, log);
  ASSERT_TRUE(outcome.ok());
  const nlohmann::json j =
      nlohmann::json::parse(Slurp(fs::path(outcome->run_dir) / "run_manifest.json"));
  EXPECT_EQ(j["tool"], "cmm");
  EXPECT_EQ(j["mode"], "deterministic");
  EXPECT_EQ(j["seed"], 12);
  EXPECT_EQ(j["duration_ticks"], 1);
  EXPECT_EQ(j["schemes"], nlohmann::json::array({"IP"}));
  EXPECT_EQ(j["overrides"]["scenario.seed"], "12");
  EXPECT_EQ(j["config"]["agent:fv.control"], "cacc");
}

TEST(CmdRunTest, TwoProcessSmokeRunReconciles) {
  const fs::path root = FreshDir("two_process");
  RunConfig config =
      LoadOrDie(kOcclusion, {{"run.mode", "two-process"},
                             {"case_study.duration_ticks", "30"},
                             {"channel.innate_delay_ms", "5"},
                             {"channel.acd_mean_ms", "2"},
                             {"channel.acd_std_ms", "1"},
                             {"channel.drop_threshold", "0.2"},
                             {"run.output_dir", root.string()}});
  config.run_name = "tp";
  std::ostringstream log;
  absl::StatusOr<RunOutcome> outcome = CmdRun(config, log);
  ASSERT_TRUE(outcome.ok()) << outcome.status() << "\n" << log.str();
  EXPECT_NE(outcome->summary.find("reconciled"), std::string::npos) << outcome->summary;

  const fs::path dir(outcome->run_dir);
  const nlohmann::json stats = nlohmann::json::parse(Slurp(dir / "mirror" / "mirror_stats.json"));
  const std::string jsonl = Slurp(dir / "mirror" / "mirror_snapshots.jsonl");
  EXPECT_EQ(static_cast<int64_t>(std::count(jsonl.begin(), jsonl.end(), '\n')),
            stats["snapshots"].get<int64_t>());
  EXPECT_EQ(stats["protocol_errors"], 0);
  EXPECT_GT(stats["snapshots"].get<int64_t>(), 0);
}

TEST(CmdRunTest, TwoProcessWithoutMirrorFailsAsTransportError) {
  const fs::path root = FreshDir("no_peer");
  RunConfig config =
      LoadOrDie(kOcclusion, {{"run.mode", "two-process"},
                             {"case_study.duration_ticks", "2"},
                             {"run.output_dir", root.string()}});
  config.run_name = "x";
  config.mirror_host = "127.0.0.1";
  config.mirror_port = 1;  // nothing listens on a privileged port here
  std::ostringstream log;
  absl::StatusOr<RunOutcome> outcome = CmdRun(config, log);
  ASSERT_FALSE(outcome.ok());
  EXPECT_EQ(ExitCodeFor(outcome.status()), 3) << outcome.status();
}

class CmdEvalTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = FreshDir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(root_ / "labels");
    fs::create_directories(root_ / "det");
  }

  void Write(const std::string& rel, const std::vector<LabelRecord>& records) {
    ASSERT_TRUE(WriteLabelFile((root_ / rel).string(), records).ok());
  }

  static LabelRecord Box(AgentClass cls, double x, double y, std::optional<double> score) {
    LabelRecord r;
    r.cls = cls;
    r.x = x;
    r.y = y;
    r.z = -1.0;
    r.length = cls == AgentClass::kPedestrian ? 0.6 : 4.5;
    r.width = cls == AgentClass::kPedestrian ? 0.6 : 1.8;
    r.height = 1.5;
    r.score = score;
    return r;
  }

  fs::path root_;
};

TEST_F(CmdEvalTest, PerfectDetectionsScoreOne) {
  const std::vector<LabelRecord> truth = {Box(AgentClass::kCar, 10, 0, {}),
                                          Box(AgentClass::kPedestrian, 20, 5, {})};
  std::vector<LabelRecord> det = truth;
  for (LabelRecord& r : det) r.score = 0.9;
  Write("labels/000000.txt", truth);
  Write("labels/000001.txt", {Box(AgentClass::kTruck, 30, -5, {})});
  Write("det/000000.txt", det);
  Write("det/000001.txt", {Box(AgentClass::kTruck, 30, -5, 0.8)});
  std::ostringstream log;
  absl::StatusOr<std::vector<EvalReport>> reports =
      CmdEval((root_ / "det").string(), (root_ / "labels").string(), {0.5, 0.75},
              (root_ / "out").string(), log);
  ASSERT_TRUE(reports.ok()) << reports.status();
  ASSERT_EQ(reports->size(), 2u);
  for (const EvalReport& r : *reports) {
    EXPECT_EQ(r.num_ground_truth, 3);
    EXPECT_EQ(r.precision, 1.0);
    EXPECT_EQ(r.recall, 1.0);
    EXPECT_EQ(r.f1, 1.0);
    EXPECT_EQ(r.ap, 1.0);
    for (const ClassMetrics& c : r.per_class) EXPECT_EQ(c.f1, 1.0);
  }
  EXPECT_TRUE(fs::exists(root_ / "out" / "eval_iou50.csv"));
  EXPECT_TRUE(fs::exists(root_ / "out" / "eval_iou75.csv"));
}

TEST_F(CmdEvalTest, EmptyInputsGiveZeroReport) {
  Write("labels/000000.txt", {});
  Write("det/000000.txt", {});
  std::ostringstream log;
  absl::StatusOr<std::vector<EvalReport>> reports = CmdEval(
      (root_ / "det").string(), (root_ / "labels").string(), {0.5}, "", log);
  ASSERT_TRUE(reports.ok()) << reports.status();
  const EvalReport& r = reports->front();
  EXPECT_EQ(r.num_ground_truth, 0);
  EXPECT_EQ(r.num_detections, 0);
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f1, 0.0);
  EXPECT_EQ(r.ap, 0.0);
}

TEST_F(CmdEvalTest, SingleFilesWork) {
  Write("labels/a.txt", {Box(AgentClass::kCar, 10, 0, {})});
  Write("det/a.txt", {Box(AgentClass::kCar, 10, 0, 0.7), Box(AgentClass::kCar, 30, 0, 0.6)});
  std::ostringstream log;
  absl::StatusOr<std::vector<EvalReport>> reports = CmdEval(
      (root_ / "det/a.txt").string(), (root_ / "labels/a.txt").string(), {0.5}, "", log);
  ASSERT_TRUE(reports.ok()) << reports.status();
  EXPECT_EQ(reports->front().precision, 0.5);
  EXPECT_EQ(reports->front().recall, 1.0);
}

TEST_F(CmdEvalTest, SchemaMismatchIsConfigError) {
  Write("labels/000000.txt", {});
  Write("det/000000.txt", {});
  Write("det/000007.txt", {});
  std::ostringstream log;
  absl::StatusOr<std::vector<EvalReport>> reports = CmdEval(
      (root_ / "det").string(), (root_ / "labels").string(), {0.5}, "", log);
  ASSERT_FALSE(reports.ok());
  EXPECT_NE(reports.status().message().find("000007"), std::string::npos);
  EXPECT_EQ(ExitCodeFor(reports.status()), 2);

  std::ofstream(root_ / "labels" / "000001.txt") << "Car 1 2\n";
  std::ofstream(root_ / "det" / "000001.txt") << "\n";
  fs::remove(root_ / "det" / "000007.txt");
  reports = CmdEval((root_ / "det").string(), (root_ / "labels").string(), {0.5}, "", log);
  EXPECT_FALSE(reports.ok());

  EXPECT_FALSE(CmdEval((root_ / "det").string(), (root_ / "labels").string(), {1.5}, "", log)
                   .ok());
  EXPECT_FALSE(CmdEval((root_ / "det").string(), (root_ / "labels/000000.txt").string(),
                       {0.5}, "", log)
                   .ok());
}

TEST(CmdProtoTest, DumpThenDecode) {
  const fs::path root = FreshDir("proto");
  std::ostringstream log;
  ASSERT_TRUE(CmdProtoDump((root / "g.bin").string(), log).ok());
  EXPECT_EQ(Slurp(root / "g.bin"), Slurp(CMM_SOURCE_DIR "/tests/data/golden_frame.bin"));
  std::ostringstream out;
  ASSERT_TRUE(CmdProtoDecode((root / "g.bin").string(), out).ok());
  EXPECT_NE(out.str().find("\"frame_id\""), std::string::npos);
  std::ofstream(root / "junk.bin") << "\x00\x00\x00\x05{oops";
  EXPECT_FALSE(CmdProtoDecode((root / "junk.bin").string(), out).ok());
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(RunCli("--version"), 0);
  EXPECT_EQ(RunCli(""), 2);
  EXPECT_EQ(RunCli("frobnicate"), 2);
  EXPECT_EQ(RunCli("run /nonexistent.ini"), 2);
  EXPECT_EQ(RunCli("run " + kOcclusion + " --mode warp"), 2);
  EXPECT_EQ(RunCli("eval /nonexistent /nonexistent"), 2);
  const fs::path root = FreshDir("cli");
  EXPECT_EQ(RunCli("run " + kOcclusion + " --duration 3 --schemes IP --out " +
                   root.string() + " --run-name ok"),
            0);
  EXPECT_TRUE(fs::exists(root / "ok" / "summary.txt"));
}

}  // namespace
}  // namespace cmm

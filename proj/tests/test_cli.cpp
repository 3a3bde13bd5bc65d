// Copyright 2026 The quadrol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the built CLI binary end to end.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

const char* cli_path() { return QUADROL_CLI_PATH; }
const fs::path config_dir{QUADROL_CONFIG_DIR};

int run_command(const std::string& args) {
  const std::string command = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("quadrol_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

TEST(CliValidate, ShippedConfigsAreValid) {
  EXPECT_EQ(run_command("validate " + (config_dir / "default.cfg").string()), 0);
  EXPECT_EQ(run_command("validate " + (config_dir / "standing.cfg").string()), 0);
}

TEST(CliValidate, BadFieldFailsWithValidationExit) {
  const fs::path dir = fresh_dir("validate");
  const fs::path bad = dir / "bad.cfg";
  std::ofstream(bad) << "[robot]\nmu = -0.1\n";
  EXPECT_EQ(run_command("validate " + bad.string()), 1);

  const fs::path bad_duty = dir / "bad_duty.cfg";
  std::ofstream(bad_duty) << "[gait]\nduty = 0.4\n";
  EXPECT_EQ(run_command("validate " + bad_duty.string()), 1);
}

TEST(CliValidate, UnreadableFileFails) {
  EXPECT_NE(run_command("validate /nonexistent/nowhere.cfg"), 0);
}

TEST(CliRun, ZeroHorizonIsValidationError) {
  const fs::path dir = fresh_dir("run_h0");
  EXPECT_EQ(run_command("run --horizon 0 --duration 0.5 --out " + dir.string()), 1);
}

TEST(CliRun, StandingScenarioReportsTinyCost) {
  const fs::path dir = fresh_dir("run_standing");
  const std::string cmd = std::string(cli_path()) + " run --config " +
                          (config_dir / "standing.cfg").string() + " --out " +
                          dir.string() + " > " + (dir / "stdout.txt").string();
  ASSERT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0);
  const std::string out = slurp(dir / "stdout.txt");
  const size_t pos = out.find("accumulated cost (full episode): ");
  ASSERT_NE(pos, std::string::npos) << out;
  const double total = std::stod(out.substr(pos + 33));
  EXPECT_LT(total, 1e-6);
  EXPECT_TRUE(fs::exists(dir / "mpc_N3_seed1.csv"));
}

TEST(CliRun, RepeatRunsProduceIdenticalCsv) {
  const fs::path dir_a = fresh_dir("run_rep_a");
  const fs::path dir_b = fresh_dir("run_rep_b");
  const std::string base = "run --config " + (config_dir / "default.cfg").string() +
                           " --controller rql --horizon 2 --duration 0.9 --seed 5 --out ";
  ASSERT_EQ(run_command(base + dir_a.string()), 0);
  ASSERT_EQ(run_command(base + dir_b.string()), 0);
  EXPECT_EQ(slurp(dir_a / "rql_N2_seed5.csv"), slurp(dir_b / "rql_N2_seed5.csv"));
}

TEST(CliRun, EffectiveConfigEchoed) {
  const fs::path dir = fresh_dir("run_echo");
  ASSERT_EQ(run_command("run --controller mpc --horizon 2 --duration 0.6 --out " +
                        dir.string()),
            0);
  const std::string echoed = slurp(dir / "mpc_N2_seed1.cfg");
  EXPECT_NE(echoed.find("horizon = 2"), std::string::npos);
  EXPECT_NE(echoed.find("mode = mpc"), std::string::npos);
}

TEST(CliRun, EnvVarSelectsOutputDirectory) {
  const fs::path dir = fresh_dir("run_env");
  const std::string cmd = "QUADROL_OUT_DIR=" + dir.string() + " " + cli_path() +
                          " run --controller mpc --horizon 2 --duration 0.6 "
                          ">/dev/null 2>&1";
  ASSERT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0);
  EXPECT_TRUE(fs::exists(dir / "mpc_N2_seed1.csv"));
}

TEST(CliRun, DivergedEpisodeExitsRuntimeAndKeepsPartialCsv) {
  // Short-horizon MPC on the default mismatch scenario falls over mid-episode.
  const fs::path dir = fresh_dir("run_diverge");
  EXPECT_EQ(run_command("run --config " + (config_dir / "default.cfg").string() +
                        " --controller mpc --horizon 2 --out " + dir.string()),
            2);
  const std::string csv = slurp(dir / "mpc_N2_seed1.csv");
  EXPECT_FALSE(csv.empty());
  EXPECT_NE(csv.find("# error:"), std::string::npos);
}

TEST(CliSweep, SummaryAndResummarizeIdentical) {
  const fs::path dir = fresh_dir("sweep");
  const std::string base = "sweep --horizons 2 3 --modes mpc,rql --seeds 2 "
                           "--jobs 2 --out " + dir.string();
  // Short episodes via a small config override file.
  const fs::path cfg = dir / "short.cfg";
  std::ofstream(cfg) << "[episode]\nduration = 0.9\n";
  ASSERT_EQ(run_command("sweep --config " + cfg.string() +
                        " --horizons 2 3 --modes mpc,rql --seeds 2 --jobs 2 --out " +
                        dir.string()),
            0);
  ASSERT_TRUE(fs::exists(dir / "summary.csv"));
  const std::string first = slurp(dir / "summary.csv");
  // Row order contract: ascending horizon, mpc before rql.
  std::istringstream lines(first);
  std::string header, r1, r2, r3, r4;
  std::getline(lines, header);
  std::getline(lines, r1);
  std::getline(lines, r2);
  std::getline(lines, r3);
  std::getline(lines, r4);
  EXPECT_EQ(r1.substr(0, 6), "mpc,2,");
  EXPECT_EQ(r2.substr(0, 6), "rql,2,");
  EXPECT_EQ(r3.substr(0, 6), "mpc,3,");
  EXPECT_EQ(r4.substr(0, 6), "rql,3,");

  ASSERT_EQ(run_command("sweep --config " + cfg.string() +
                        " --horizons 2 3 --modes mpc,rql --seeds 2 --resummarize --out " +
                        dir.string()),
            0);
  EXPECT_EQ(slurp(dir / "summary.csv"), first);
  (void)base;
}

}  // namespace

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

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadrol/config.hpp"
#include "quadrol/csv.hpp"
#include "quadrol/harness.hpp"

namespace {

namespace fs = std::filesystem;
using namespace quadrol;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

fs::path resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("QUADROL_OUT_DIR"); env && *env) return env;
  return "out";
}

EpisodeConfig load_config(const std::string& path) {
  return path.empty() ? EpisodeConfig{} : parse_config_file(path);
}

int report_violations(const EpisodeConfig& cfg) {
  const std::vector<std::string> violations = cfg.violations();
  for (const std::string& v : violations) std::cerr << "invalid config: " << v << '\n';
  return violations.empty() ? kExitOk : kExitValidation;
}

std::vector<ControllerMode> parse_modes(const std::string& list) {
  std::vector<ControllerMode> modes;
  std::istringstream in(list);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token == "mpc") modes.push_back(ControllerMode::kMpc);
    else if (token == "rql") modes.push_back(ControllerMode::kRql);
    else throw std::invalid_argument("unknown mode '" + token + "' (use mpc,rql)");
  }
  return modes;
}

void print_episode_summary(const EpisodeLog& log, const EpisodeConfig& cfg) {
  const double skip = cfg.transient_skip_frac * cfg.duration;
  double total = log.rows.empty() ? 0.0 : log.rows.back().accumulated_cost;
  std::cout << "episode: " << mode_name(log.mode) << " N=" << log.horizon
            << " seed=" << log.seed << " steps=" << log.rows.size() << '\n';
  std::cout << "accumulated cost (full episode): " << total << '\n';
  try {
    const CostSummary summary = accumulated_cost(log, skip);
    std::cout << "accumulated cost (t >= " << skip << "): " << summary.sum
              << ", mean running cost: " << summary.mean << '\n';
  } catch (const std::exception&) {
    std::cout << "accumulated cost (post-transient): n/a (episode too short)\n";
  }
  const Vec12 err = max_axis_errors(log, skip);
  static const char* const names[kStateDim] = {"px", "py", "pz", "roll",
                                               "pitch", "yaw", "vx", "vy",
                                               "vz", "wx", "wy", "wz"};
  std::cout << "max per-axis errors:";
  for (int i = 0; i < kStateDim; ++i) std::cout << ' ' << names[i] << '=' << err(i);
  std::cout << '\n';
  if (log.failed) std::cout << "episode FAILED: " << log.error << '\n';
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& controller,
            std::optional<int> horizon, std::optional<double> duration,
            std::optional<long> seed, const std::string& out_flag) {
  EpisodeConfig cfg = load_config(config_path);
  if (controller) {
    if (*controller == "mpc") cfg.controller.mode = ControllerMode::kMpc;
    else if (*controller == "rql") cfg.controller.mode = ControllerMode::kRql;
    else throw std::invalid_argument("unknown controller '" + *controller + "'");
  }
  if (horizon) cfg.controller.horizon = *horizon;
  if (duration) cfg.duration = *duration;
  if (seed) cfg.seed = static_cast<std::uint64_t>(*seed);

  if (const int rc = report_violations(cfg); rc != kExitOk) return rc;

  const fs::path out_dir = resolve_out_dir(out_flag);
  fs::create_directories(out_dir);
  const std::string stem =
      episode_filename(cfg.controller.mode, cfg.controller.horizon, cfg.seed);
  // Echo the effective config so the run is reproducible from its output.
  atomic_write(out_dir / (stem.substr(0, stem.size() - 4) + ".cfg"),
               serialize_config(cfg));

  const EpisodeLog log = run_episode(cfg);
  write_episode_csv(out_dir / stem, log);
  print_episode_summary(log, cfg);
  std::cout << "wrote " << (out_dir / stem).string() << '\n';
  return log.failed ? kExitRuntime : kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::vector<int>& horizons,
              const std::string& modes, int seeds, int jobs,
              const std::string& out_flag, bool resummarize) {
  EpisodeConfig cfg = load_config(config_path);
  if (const int rc = report_violations(cfg); rc != kExitOk) return rc;

  SweepRequest request;
  request.base = cfg;
  request.horizons = horizons.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6, 8, 10}
                                      : horizons;
  request.modes = parse_modes(modes);
  request.seeds.clear();
  for (int s = 0; s < seeds; ++s)
    request.seeds.push_back(cfg.seed + static_cast<std::uint64_t>(s));
  request.jobs = jobs;
  request.out_dir = resolve_out_dir(out_flag);
  request.resummarize_only = resummarize;
  fs::create_directories(request.out_dir);
  atomic_write(request.out_dir / "sweep_config.cfg", serialize_config(cfg));

  const SweepResult result = run_sweep(request);
  write_sweep_summary(request.out_dir / "summary.csv", result, request.seeds);

  std::cout << std::left << std::setw(6) << "mode" << std::setw(5) << "N"
            << std::setw(16) << "acc_cost_mean" << std::setw(16) << "acc_cost_std"
            << std::setw(18) << "mean_cost_mean" << "failures\n";
  for (const SweepCell& cell : result.cells) {
    std::cout << std::left << std::setw(6) << mode_name(cell.mode) << std::setw(5)
              << cell.horizon << std::setw(16) << cell.acc_cost_mean
              << std::setw(16) << cell.acc_cost_std << std::setw(18)
              << cell.mean_cost_mean << cell.failures << '\n';
  }
  std::cout << "wrote " << (request.out_dir / "summary.csv").string() << '\n';
  for (const SweepCell& cell : result.cells) {
    if (cell.failures > 0) return kExitRuntime;
  }
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  const EpisodeConfig cfg = parse_config_file(config_path);
  const int rc = report_violations(cfg);
  if (rc == kExitOk) std::cout << "config ok\n";
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Receding-horizon quadruped control: nominal MPC and rollout "
               "Q-learning over a single-rigid-body model"};
  app.require_subcommand(1);

  std::string config_path, modes = "mpc,rql", out_dir;
  std::optional<std::string> controller;
  std::optional<int> horizon;
  std::optional<double> duration;
  std::optional<long> seed;
  int seeds = 1, jobs = 1;
  std::vector<int> horizons;
  bool resummarize = false;

  CLI::App* run = app.add_subcommand("run", "Run one closed-loop episode");
  run->add_option("--config", config_path, "Experiment config file");
  run->add_option("--controller", controller, "Controller override: mpc or rql");
  run->add_option("--horizon", horizon, "Prediction horizon override");
  run->add_option("--duration", duration, "Episode duration override [s]");
  run->add_option("--seed", seed, "RNG seed override");
  run->add_option("--out", out_dir, "Output directory (or QUADROL_OUT_DIR)");

  CLI::App* sweep = app.add_subcommand("sweep", "Run a horizon sweep grid");
  sweep->add_option("--config", config_path, "Experiment config file");
  sweep->add_option("--horizons", horizons, "Horizon list (default 1 2 3 4 5 6 8 10)");
  sweep->add_option("--modes", modes, "Comma list of controllers (default mpc,rql)");
  sweep->add_option("--seeds", seeds, "Number of seeds (base seed from config)");
  sweep->add_option("--jobs", jobs, "Episodes run in parallel");
  sweep->add_option("--out", out_dir, "Output directory (or QUADROL_OUT_DIR)");
  sweep->add_flag("--resummarize", resummarize,
                  "Rebuild summary.csv from existing episode CSVs only");

  CLI::App* validate = app.add_subcommand("validate", "Validate a config file");
  std::string validate_path;
  validate->add_option("config", validate_path, "Config file to check")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(config_path, controller, horizon, duration, seed, out_dir);
    if (sweep->parsed())
      return cmd_sweep(config_path, horizons, modes, seeds, jobs, out_dir, resummarize);
    if (validate->parsed()) return cmd_validate(validate_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

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

#ifndef QUADROL_HARNESS_H_
#define QUADROL_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "quadrol/controller.hpp"
#include "quadrol/costs.hpp"
#include "quadrol/critic.hpp"
#include "quadrol/gait.hpp"
#include "quadrol/types.hpp"

namespace quadrol {

// Everything one closed-loop episode needs. The plant integrates the same
// rigid-body model with RK4 at `substeps` per control period, optionally
// mass-perturbed and with Gaussian force noise, while the controller predicts
// with coarse explicit Euler; that gap is what the critic gets to learn.
struct EpisodeConfig {
  double duration = 20.0;          // [s]
  int substeps = 10;               // plant RK4 substeps per control period
  double mass_scale = 1.1;         // plant mass = mass_scale * nominal mass
  double noise_std = 1.0;          // per-component force noise [N], plant side
  std::uint64_t seed = 1;
  double transient_skip_frac = 0.2;  // fraction of the episode dropped from stats
  ControllerConfig controller;
  GaitConfig gait;
  CostWeights cost;
  RobotParams robot;
  CriticConfig critic;

  std::vector<std::string> violations() const;
  void validate() const;
};

struct EpisodeRow {
  double t = 0.0;
  Vec12 x = Vec12::Zero();
  Vec12 x_des = Vec12::Zero();
  Vec12 u = Vec12::Zero();
  double running_cost = 0.0;
  double accumulated_cost = 0.0;
  int iterations = 0;
  double objective = 0.0;          // solver diagnostic, not serialized
  Vec15 critic_w = Vec15::Zero();  // meaningful in RQL mode only
};

struct EpisodeLog {
  ControllerMode mode = ControllerMode::kMpc;
  int horizon = 0;
  std::uint64_t seed = 0;
  std::vector<EpisodeRow> rows;
  bool failed = false;
  std::string error;
  // Post-noise actions fed to the plant; kept in memory for feasibility
  // checks, not serialized.
  std::vector<Action> applied;
};

// Runs one closed-loop episode: plan -> controller -> noise + pyramid
// re-projection -> RK4 plant -> log. Controller or dynamics errors stop the
// episode and are recorded on the log instead of propagating.
EpisodeLog run_episode(const EpisodeConfig& cfg);

struct CostSummary {
  double sum = 0.0;
  double mean = 0.0;
  int count = 0;
};

// Sum and mean of the running cost over rows with t >= transient_skip.
// Throws when the window is empty.
CostSummary accumulated_cost(const EpisodeLog& log, double transient_skip);

// Per-axis max |x - x_des| over rows with t >= transient_skip.
Vec12 max_axis_errors(const EpisodeLog& log, double transient_skip);

struct SweepCell {
  ControllerMode mode = ControllerMode::kMpc;
  int horizon = 0;
  int episodes = 0;
  int failures = 0;
  double acc_cost_mean = 0.0;
  double acc_cost_std = 0.0;
  double mean_cost_mean = 0.0;
  double mean_cost_std = 0.0;
  Vec12 max_abs_err = Vec12::Zero();  // mean over seeds of per-episode maxima
};

struct SweepResult {
  std::vector<SweepCell> cells;  // ascending horizon, MPC before RQL
};

struct SweepRequest {
  EpisodeConfig base;
  std::vector<int> horizons;
  std::vector<ControllerMode> modes{ControllerMode::kMpc, ControllerMode::kRql};
  std::vector<std::uint64_t> seeds{1};
  int jobs = 1;                     // episodes run in parallel when > 1
  std::filesystem::path out_dir;    // when set, one CSV per episode
  bool reuse_existing = true;       // resume by loading episode CSVs already present
  bool resummarize_only = false;    // aggregate strictly from existing CSVs
};

// Runs every (mode, horizon, seed) episode independently and aggregates per
// (mode, horizon). The result is identical whatever the job count: episodes
// own their controller, critic, gait state and rng, and aggregation happens
// after all of them finish, in grid order.
SweepResult run_sweep(const SweepRequest& request);

std::string mode_name(ControllerMode mode);
std::string episode_filename(ControllerMode mode, int horizon, std::uint64_t seed);

std::string episode_csv_text(const EpisodeLog& log);
void write_episode_csv(const std::filesystem::path& path, const EpisodeLog& log);
EpisodeLog read_episode_csv(const std::filesystem::path& path);

std::string sweep_summary_text(const SweepResult& result,
                               const std::vector<std::uint64_t>& seeds);
void write_sweep_summary(const std::filesystem::path& path,
                         const SweepResult& result,
                         const std::vector<std::uint64_t>& seeds);

}  // namespace quadrol

#endif  // QUADROL_HARNESS_H_

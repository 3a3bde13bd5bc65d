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

#include "quadrol/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "quadrol/csv.hpp"
#include "quadrol/dynamics.hpp"

namespace quadrol {

namespace {

const char* const kStateNames[kStateDim] = {"px", "py", "pz", "roll",
                                            "pitch", "yaw", "vx", "vy",
                                            "vz", "wx", "wy", "wz"};
const char* const kForceNames[kActionDim] = {
    "f_fl_x", "f_fl_y", "f_fl_z", "f_fr_x", "f_fr_y", "f_fr_z",
    "f_rl_x", "f_rl_y", "f_rl_z", "f_rr_x", "f_rr_y", "f_rr_z"};

}  // namespace

std::vector<std::string> EpisodeConfig::violations() const {
  std::vector<std::string> v;
  if (!(duration > 0.0)) v.push_back("episode.duration: must be > 0");
  if (substeps < 1) v.push_back("episode.substeps: must be >= 1");
  if (!(mass_scale > 0.0)) v.push_back("episode.mass_scale: must be > 0");
  if (!(noise_std >= 0.0)) v.push_back("episode.noise_std: must be >= 0");
  if (!(transient_skip_frac >= 0.0 && transient_skip_frac < 1.0))
    v.push_back("episode.transient_skip_frac: must lie in [0, 1)");
  for (const auto& list :
       {controller.violations(), gait.violations(), cost.violations(),
        robot.violations(), critic.violations()}) {
    v.insert(v.end(), list.begin(), list.end());
  }
  return v;
}

void EpisodeConfig::validate() const { throw_if_violations(violations()); }

EpisodeLog run_episode(const EpisodeConfig& cfg) {
  cfg.validate();

  RobotParams plant = cfg.robot;
  plant.m *= cfg.mass_scale;

  Controller controller(cfg.controller, cfg.cost, cfg.robot, cfg.critic);
  GaitState gait_state;
  // Start on the reference: at height, already moving at the commanded
  // velocity, so the episode begins without a step input.
  BodyState x;
  x.p = Vec3(0.0, 0.0, cfg.gait.body_height);
  x.v = Vec3(cfg.gait.v_des.x(), cfg.gait.v_des.y(), 0.0);
  x.omega_b = Vec3(0.0, 0.0, cfg.gait.yaw_rate_des);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> noise(0.0, cfg.noise_std > 0.0 ? cfg.noise_std : 1.0);

  EpisodeLog log;
  log.mode = cfg.controller.mode;
  log.horizon = cfg.controller.horizon;
  log.seed = cfg.seed;

  const double delta = cfg.controller.delta;
  const int steps = static_cast<int>(std::llround(cfg.duration / delta));
  double accumulated = 0.0;

  for (int k = 0; k < steps; ++k) {
    const double t = k * delta;
    try {
      if (!x.finite()) throw std::runtime_error("plant state not finite");
      update_touchdowns(t, x, cfg.gait, gait_state);
      const ReferencePlan plan = plan_reference(t, x, cfg.controller.horizon,
                                                delta, cfg.gait, gait_state);
      const BodyState x_des = reference_state(t, cfg.gait, gait_state.ref_origin);

      const Action u = controller.step(x, x_des, plan);
      const double r = running_cost(x, x_des, u, cfg.cost, cfg.robot);
      accumulated += r;

      EpisodeRow row;
      row.t = t;
      row.x = x.flat();
      row.x_des = x_des.flat();
      row.u = u.flat();
      row.running_cost = r;
      row.accumulated_cost = accumulated;
      row.iterations = controller.last_solution().iterations;
      row.objective = controller.last_solution().objective;
      if (cfg.controller.mode == ControllerMode::kRql)
        row.critic_w = controller.critic().w_prev.w;
      log.rows.push_back(row);

      // The plant only ever receives feasible forces: noise is injected on
      // stance legs and the result re-projected onto the pyramid.
      Action applied = u;
      if (cfg.noise_std > 0.0) {
        for (int leg = 0; leg < kNumLegs; ++leg) {
          if (!plan.contacts[0].stance[leg]) continue;
          // Draw in a defined order; argument evaluation order is not.
          for (int axis = 0; axis < 3; ++axis) applied.f[leg](axis) += noise(rng);
        }
        applied = project_action(applied, plan.contacts[0], cfg.robot);
      }
      log.applied.push_back(applied);

      FootLevers levers;
      for (int leg = 0; leg < kNumLegs; ++leg)
        levers.r[leg] = gait_state.touchdown[leg] - x.p;
      x = integrate_plant(delta, cfg.substeps, x, levers, applied, plant);
    } catch (const std::exception& e) {
      log.failed = true;
      log.error = e.what();
      break;
    }
  }
  return log;
}

CostSummary accumulated_cost(const EpisodeLog& log, double transient_skip) {
  if (log.rows.empty()) throw std::invalid_argument("accumulated_cost: empty log");
  CostSummary summary;
  for (const EpisodeRow& row : log.rows) {
    if (row.t < transient_skip) continue;
    summary.sum += row.running_cost;
    ++summary.count;
  }
  if (summary.count == 0)
    throw std::invalid_argument("accumulated_cost: no rows past the transient window");
  summary.mean = summary.sum / summary.count;
  return summary;
}

Vec12 max_axis_errors(const EpisodeLog& log, double transient_skip) {
  Vec12 err = Vec12::Zero();
  for (const EpisodeRow& row : log.rows) {
    if (row.t < transient_skip) continue;
    for (int i = 0; i < kStateDim; ++i)
      err(i) = std::max(err(i), std::abs(row.x(i) - row.x_des(i)));
  }
  return err;
}

std::string mode_name(ControllerMode mode) {
  return mode == ControllerMode::kMpc ? "mpc" : "rql";
}

std::string episode_filename(ControllerMode mode, int horizon, std::uint64_t seed) {
  std::ostringstream name;
  name << mode_name(mode) << "_N" << horizon << "_seed" << seed << ".csv";
  return name.str();
}

std::string episode_csv_text(const EpisodeLog& log) {
  std::ostringstream out;
  out << "t";
  for (const char* name : kStateNames) out << ',' << name;
  for (const char* name : kStateNames) out << ",des_" << name;
  for (const char* name : kForceNames) out << ',' << name;
  out << ",running_cost,accumulated_cost,iterations";
  if (log.mode == ControllerMode::kRql)
    for (int i = 0; i < kQInputDim; ++i) out << ",w" << i;
  out << '\n';

  for (const EpisodeRow& row : log.rows) {
    out << format_double(row.t);
    for (int i = 0; i < kStateDim; ++i) out << ',' << format_double(row.x(i));
    for (int i = 0; i < kStateDim; ++i) out << ',' << format_double(row.x_des(i));
    for (int i = 0; i < kActionDim; ++i) out << ',' << format_double(row.u(i));
    out << ',' << format_double(row.running_cost) << ','
        << format_double(row.accumulated_cost) << ',' << row.iterations;
    if (log.mode == ControllerMode::kRql)
      for (int i = 0; i < kQInputDim; ++i) out << ',' << format_double(row.critic_w(i));
    out << '\n';
  }
  if (log.failed) out << "# error: " << log.error << '\n';
  return out.str();
}

void write_episode_csv(const std::filesystem::path& path, const EpisodeLog& log) {
  atomic_write(path, episode_csv_text(log));
}

EpisodeLog read_episode_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open episode csv " + path.string());

  EpisodeLog log;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty episode csv " + path.string());
  const std::vector<std::string> header = split_csv_line(line);
  const bool rql = !header.empty() && header.back() == "w14";
  log.mode = rql ? ControllerMode::kRql : ControllerMode::kMpc;
  const size_t expected = 1 + 2 * kStateDim + kActionDim + 3 + (rql ? kQInputDim : 0);
  if (header.size() != expected)
    throw std::runtime_error("unexpected episode csv header in " + path.string());

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      log.failed = true;
      const size_t colon = line.find(':');
      log.error = colon == std::string::npos ? line : line.substr(colon + 2);
      continue;
    }
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != expected)
      throw std::runtime_error("bad episode csv row in " + path.string());
    EpisodeRow row;
    size_t c = 0;
    row.t = parse_double(fields[c++]);
    for (int i = 0; i < kStateDim; ++i) row.x(i) = parse_double(fields[c++]);
    for (int i = 0; i < kStateDim; ++i) row.x_des(i) = parse_double(fields[c++]);
    for (int i = 0; i < kActionDim; ++i) row.u(i) = parse_double(fields[c++]);
    row.running_cost = parse_double(fields[c++]);
    row.accumulated_cost = parse_double(fields[c++]);
    row.iterations = static_cast<int>(std::stol(fields[c++]));
    if (rql)
      for (int i = 0; i < kQInputDim; ++i) row.critic_w(i) = parse_double(fields[c++]);
    log.rows.push_back(row);
  }
  return log;
}

namespace {

struct EpisodeTask {
  ControllerMode mode;
  int horizon;
  std::uint64_t seed;
};

EpisodeLog obtain_episode(const SweepRequest& request, const EpisodeTask& task) {
  namespace fs = std::filesystem;
  fs::path path;
  if (!request.out_dir.empty())
    path = request.out_dir / episode_filename(task.mode, task.horizon, task.seed);

  if (!path.empty() && (request.reuse_existing || request.resummarize_only) &&
      fs::exists(path)) {
    EpisodeLog log = read_episode_csv(path);
    log.mode = task.mode;
    log.horizon = task.horizon;
    log.seed = task.seed;
    return log;
  }
  if (request.resummarize_only)
    throw std::runtime_error("resummarize: missing episode csv " + path.string());

  EpisodeConfig cfg = request.base;
  cfg.controller.mode = task.mode;
  cfg.controller.horizon = task.horizon;
  cfg.seed = task.seed;
  EpisodeLog log = run_episode(cfg);
  if (!path.empty()) write_episode_csv(path, log);
  return log;
}

}  // namespace

SweepResult run_sweep(const SweepRequest& request) {
  if (request.horizons.empty())
    throw std::invalid_argument("run_sweep: empty horizon list");
  if (request.modes.empty() || request.seeds.empty())
    throw std::invalid_argument("run_sweep: empty mode or seed list");
  if (!request.resummarize_only) request.base.validate();

  std::vector<int> horizons = request.horizons;
  std::sort(horizons.begin(), horizons.end());
  horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());
  std::vector<ControllerMode> modes = request.modes;
  std::sort(modes.begin(), modes.end());
  modes.erase(std::unique(modes.begin(), modes.end()), modes.end());

  std::vector<EpisodeTask> tasks;
  for (int horizon : horizons)
    for (ControllerMode mode : modes)
      for (std::uint64_t seed : request.seeds)
        tasks.push_back({mode, horizon, seed});

  std::vector<EpisodeLog> logs(tasks.size());
  std::vector<std::string> task_errors(tasks.size());
  const int total = static_cast<int>(tasks.size());

  if (request.jobs <= 1) {
    // Serial reference path; the parallel loop below must match it exactly.
    for (int i = 0; i < total; ++i) {
      try {
        logs[i] = obtain_episode(request, tasks[i]);
      } catch (const std::exception& e) {
        task_errors[i] = e.what();
      }
    }
  } else {
#pragma omp parallel for schedule(dynamic) num_threads(request.jobs)
    for (int i = 0; i < total; ++i) {
      try {
        logs[i] = obtain_episode(request, tasks[i]);
      } catch (const std::exception& e) {
        task_errors[i] = e.what();
      }
    }
  }
  for (int i = 0; i < total; ++i) {
    if (!task_errors[i].empty() && request.resummarize_only)
      throw std::runtime_error(task_errors[i]);
  }

  const double skip = request.base.transient_skip_frac * request.base.duration;
  SweepResult result;
  int task_index = 0;
  for (int horizon : horizons) {
    for (ControllerMode mode : modes) {
      SweepCell cell;
      cell.mode = mode;
      cell.horizon = horizon;
      std::vector<double> acc, mean;
      Vec12 err_sum = Vec12::Zero();
      // A diverged episode has unbounded realized cost; it enters the stats
      // as +inf so cross-horizon comparisons stay meaningful.
      constexpr double kInf = std::numeric_limits<double>::infinity();
      for (size_t s = 0; s < request.seeds.size(); ++s, ++task_index) {
        const EpisodeLog& log = logs[task_index];
        ++cell.episodes;
        bool good = !log.failed && task_errors[task_index].empty() && !log.rows.empty();
        CostSummary summary;
        if (good) {
          try {
            summary = accumulated_cost(log, skip);
          } catch (const std::exception&) {
            good = false;
          }
        }
        if (!good) {
          ++cell.failures;
          acc.push_back(kInf);
          mean.push_back(kInf);
          continue;
        }
        acc.push_back(summary.sum);
        mean.push_back(summary.mean);
        err_sum += max_axis_errors(log, skip);
      }
      const auto stats = [](const std::vector<double>& xs, double* out_mean,
                            double* out_std) {
        double sum = 0.0;
        for (double x : xs) sum += x;
        const double mu = sum / xs.size();
        double var = 0.0;
        for (double x : xs) var += (x - mu) * (x - mu);
        *out_mean = mu;
        *out_std = std::sqrt(var / xs.size());
      };
      stats(acc, &cell.acc_cost_mean, &cell.acc_cost_std);
      stats(mean, &cell.mean_cost_mean, &cell.mean_cost_std);
      const int healthy = cell.episodes - cell.failures;
      cell.max_abs_err = healthy > 0 ? Vec12(err_sum / healthy) : Vec12::Zero();
      result.cells.push_back(cell);
    }
  }
  return result;
}

std::string sweep_summary_text(const SweepResult& result,
                               const std::vector<std::uint64_t>& seeds) {
  std::ostringstream out;
  out << "mode,horizon,seeds,failures,acc_cost_mean,acc_cost_std,"
         "mean_cost_mean,mean_cost_std";
  for (const char* name : kStateNames) out << ",maxerr_" << name;
  out << '\n';
  for (const SweepCell& cell : result.cells) {
    out << mode_name(cell.mode) << ',' << cell.horizon << ',' << seeds.size()
        << ',' << cell.failures << ',' << format_double(cell.acc_cost_mean)
        << ',' << format_double(cell.acc_cost_std) << ','
        << format_double(cell.mean_cost_mean) << ','
        << format_double(cell.mean_cost_std);
    for (int i = 0; i < kStateDim; ++i)
      out << ',' << format_double(cell.max_abs_err(i));
    out << '\n';
  }
  return out.str();
}

void write_sweep_summary(const std::filesystem::path& path,
                         const SweepResult& result,
                         const std::vector<std::uint64_t>& seeds) {
  atomic_write(path, sweep_summary_text(result, seeds));
}

}  // namespace quadrol

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

#ifndef QUADROL_CONTROLLER_H_
#define QUADROL_CONTROLLER_H_

#include <optional>
#include <vector>

#include "quadrol/costs.hpp"
#include "quadrol/critic.hpp"
#include "quadrol/gait.hpp"
#include "quadrol/types.hpp"

namespace quadrol {

enum class ControllerMode { kMpc, kRql };

struct ControllerConfig {
  ControllerMode mode = ControllerMode::kMpc;
  int horizon = 5;        // prediction steps N
  double delta = 0.03;    // prediction step [s]
  double gamma = 1.0;     // discount, in (0, 1]
  int max_iters = 300;    // solver iteration cap
  double tol = 1e-6;      // first-order tolerance on the projected gradient
  bool warm_start = true;

  std::vector<std::string> violations() const;
  void validate() const;
};

// Result of one horizon solve: the action sequence, the states it predicts
// under the explicit-Euler model (predicted[0] is the input state), the
// achieved objective, and solver diagnostics.
struct HorizonSolution {
  std::vector<Action> actions;
  std::vector<BodyState> predicted;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Discounted running-cost objective over an N-step explicit-Euler rollout:
//   sum_{i=1..N} gamma^{i-1} r(x_hat_i, x_des_i, u_i),
// where u_i is applied at x_hat_{i-1} to produce x_hat_i.
double rollout_cost_mpc(const BodyState& x0, const ReferencePlan& plan,
                        const std::vector<Action>& actions,
                        const ControllerConfig& cfg, const CostWeights& weights,
                        const RobotParams& params);

// Same rollout with the last running-cost term replaced by the learned
// terminal value: sum_{i=1..N-1} gamma^{i-1} r(...) + gamma^{N-1} q(x_hat_N,
// x_des_N, u_N; w). At N = 1 this is the pure one-step value minimization.
double rollout_cost_rql(const BodyState& x0, const ReferencePlan& plan,
                        const std::vector<Action>& actions,
                        const CriticWeights& w, const ControllerConfig& cfg,
                        const CostWeights& weights, const RobotParams& params);

// Shared evaluation path: terminal_w == nullptr selects the MPC objective.
// Optionally returns the adjoint gradient with respect to every action
// component (12 per step) and the predicted state sequence.
double rollout_objective(const BodyState& x0, const ReferencePlan& plan,
                         const std::vector<Action>& actions,
                         const CriticWeights* terminal_w,
                         const ControllerConfig& cfg, const CostWeights& weights,
                         const RobotParams& params,
                         std::vector<Vec12>* grad_actions,
                         std::vector<BodyState>* states);

// Minimizes the horizon objective over the stance-leg force components (the
// contact-schedule equality is eliminated structurally; swing components stay
// bit-zero) with the friction pyramid enforced by per-leg clamping, using a
// monotone spectral projected-gradient iteration. The returned objective
// never exceeds that of the feasibility-projected warm start (or the static
// load-sharing initial guess when no warm start is given). Throws when some
// step has no stance leg.
HorizonSolution solve_horizon(const BodyState& x0, const ReferencePlan& plan,
                              const CriticWeights* terminal_w,
                              const std::vector<Action>* warm_actions,
                              const ControllerConfig& cfg,
                              const CostWeights& weights,
                              const RobotParams& params);

// Receding-horizon controller holding the warm-start memory and, in RQL
// mode, the critic. One instance drives one episode.
class Controller {
 public:
  Controller(const ControllerConfig& cfg, const CostWeights& weights,
             const RobotParams& params, const CriticConfig& critic_cfg);

  // Runs one control cycle at state x and returns the action to apply.
  // x_des_now is the reference at the current instant (used for the critic's
  // transition record in RQL mode).
  Action step(const BodyState& x, const BodyState& x_des_now,
              const ReferencePlan& plan);

  void reset();

  ControllerMode mode() const { return cfg_.mode; }
  const ControllerConfig& config() const { return cfg_; }
  const HorizonSolution& last_solution() const { return last_; }
  const CriticState& critic() const { return critic_; }

 private:
  Action mpc_step(const BodyState& x, const ReferencePlan& plan);
  Action rql_step(const BodyState& x, const BodyState& x_des_now,
                  const ReferencePlan& plan);
  std::vector<Action> shifted_warm_start() const;

  ControllerConfig cfg_;
  CostWeights weights_;
  RobotParams params_;
  CriticConfig critic_cfg_;
  CriticState critic_;
  HorizonSolution last_;
  bool has_memory_ = false;
};

}  // namespace quadrol

#endif  // QUADROL_CONTROLLER_H_

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

#include "quadrol/controller.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "quadrol/dynamics.hpp"

namespace quadrol {

std::vector<std::string> ControllerConfig::violations() const {
  std::vector<std::string> v;
  if (horizon < 1) v.push_back("controller.horizon: must be >= 1");
  if (!(delta > 0.0)) v.push_back("controller.delta: must be > 0");
  if (!(gamma > 0.0 && gamma <= 1.0)) v.push_back("controller.gamma: must lie in (0, 1]");
  if (max_iters < 1) v.push_back("controller.max_iters: must be >= 1");
  if (!(tol > 0.0)) v.push_back("controller.tol: must be > 0");
  return v;
}

void ControllerConfig::validate() const { throw_if_violations(violations()); }

double rollout_objective(const BodyState& x0, const ReferencePlan& plan,
                         const std::vector<Action>& actions,
                         const CriticWeights* terminal_w,
                         const ControllerConfig& cfg, const CostWeights& weights,
                         const RobotParams& params,
                         std::vector<Vec12>* grad_actions,
                         std::vector<BodyState>* states) {
  const int n = plan.horizon();
  if (static_cast<int>(actions.size()) != n)
    throw std::invalid_argument("rollout_objective: action count != plan length");

  std::vector<double> gamma_pow(n, 1.0);
  for (int j = 1; j < n; ++j) gamma_pow[j] = gamma_pow[j - 1] * cfg.gamma;

  std::vector<BodyState> xs(n + 1);
  std::vector<DynamicsJacobians> jacs;
  if (grad_actions) jacs.resize(n);

  xs[0] = x0;
  double objective = 0.0;
  for (int j = 0; j < n; ++j) {
    if (grad_actions)
      jacs[j] = dynamics_jacobians(xs[j], plan.levers[j], actions[j], params);
    xs[j + 1] = predict_euler(cfg.delta, xs[j], plan.levers[j], actions[j], params);
    const bool terminal = terminal_w != nullptr && j == n - 1;
    if (terminal) {
      objective += gamma_pow[j] *
                   q_value(xs[j + 1], plan.x_des[j], actions[j], *terminal_w, params);
    } else {
      objective += gamma_pow[j] *
                   running_cost(xs[j + 1], plan.x_des[j], actions[j], weights, params);
    }
  }

  if (grad_actions) {
    grad_actions->assign(n, Vec12::Zero());
    Vec12 mu = Vec12::Zero();  // dF/dx_{j+1}, accumulated backward
    for (int j = n - 1; j >= 0; --j) {
      Vec12 gx, gu;
      const bool terminal = terminal_w != nullptr && j == n - 1;
      if (terminal) {
        q_value_grad(xs[j + 1], plan.x_des[j], actions[j], *terminal_w, params,
                     &gx, &gu);
      } else {
        running_cost_grad(xs[j + 1], plan.x_des[j], actions[j], weights, params,
                          &gx, &gu);
      }
      mu += gamma_pow[j] * gx;
      (*grad_actions)[j] = gamma_pow[j] * gu + cfg.delta * (jacs[j].dfdu.transpose() * mu);
      mu += cfg.delta * (jacs[j].dfdx.transpose() * mu);
    }
  }

  if (states) *states = std::move(xs);
  return objective;
}

double rollout_cost_mpc(const BodyState& x0, const ReferencePlan& plan,
                        const std::vector<Action>& actions,
                        const ControllerConfig& cfg, const CostWeights& weights,
                        const RobotParams& params) {
  return rollout_objective(x0, plan, actions, nullptr, cfg, weights, params,
                           nullptr, nullptr);
}

double rollout_cost_rql(const BodyState& x0, const ReferencePlan& plan,
                        const std::vector<Action>& actions,
                        const CriticWeights& w, const ControllerConfig& cfg,
                        const CostWeights& weights, const RobotParams& params) {
  return rollout_objective(x0, plan, actions, &w, cfg, weights, params, nullptr,
                           nullptr);
}

namespace {

// Flat-variable bookkeeping: only stance-leg force components are decision
// variables; swing forces stay bit-zero by construction.
struct VarMap {
  std::vector<std::pair<int, int>> slots;  // (step, leg) per 3-component block

  static VarMap build(const ReferencePlan& plan) {
    VarMap map;
    for (int j = 0; j < plan.horizon(); ++j) {
      if (plan.contacts[j].num_stance() == 0) {
        throw std::runtime_error(
            "solve_horizon: infeasible schedule, step " + std::to_string(j) +
            " has no stance leg");
      }
      for (int leg = 0; leg < kNumLegs; ++leg) {
        if (plan.contacts[j].stance[leg]) map.slots.emplace_back(j, leg);
      }
    }
    return map;
  }

  int dim() const { return 3 * static_cast<int>(slots.size()); }

  Eigen::VectorXd pack(const std::vector<Action>& actions) const {
    Eigen::VectorXd v(dim());
    for (size_t s = 0; s < slots.size(); ++s)
      v.segment<3>(3 * s) = actions[slots[s].first].f[slots[s].second];
    return v;
  }

  std::vector<Action> unpack(const Eigen::VectorXd& v, int horizon) const {
    std::vector<Action> actions(horizon);
    for (size_t s = 0; s < slots.size(); ++s)
      actions[slots[s].first].f[slots[s].second] = v.segment<3>(3 * s);
    return actions;
  }

  Eigen::VectorXd project(const Eigen::VectorXd& v, const RobotParams& params) const {
    Eigen::VectorXd out(dim());
    for (size_t s = 0; s < slots.size(); ++s)
      out.segment<3>(3 * s) = project_pyramid(v.segment<3>(3 * s), params);
    return out;
  }

  Eigen::VectorXd pack_grad(const std::vector<Vec12>& grad) const {
    Eigen::VectorXd v(dim());
    for (size_t s = 0; s < slots.size(); ++s)
      v.segment<3>(3 * s) = grad[slots[s].first].segment<3>(3 * slots[s].second);
    return v;
  }
};

// Plain sequential reductions: appending zero-gradient variables must leave
// every intermediate sum bit-identical.
double dot_seq(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

double inf_norm(const Eigen::VectorXd& a) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a(i)));
  return m;
}

}  // namespace

HorizonSolution solve_horizon(const BodyState& x0, const ReferencePlan& plan,
                              const CriticWeights* terminal_w,
                              const std::vector<Action>* warm_actions,
                              const ControllerConfig& cfg,
                              const CostWeights& weights,
                              const RobotParams& params) {
  const int n = plan.horizon();
  const VarMap map = VarMap::build(plan);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Static load-sharing guess: body weight split across the stance legs.
  const auto static_guess = [&]() {
    std::vector<Action> guess(n);
    const double quarter_weight = params.m * params.gravity.norm() / 4.0;
    for (int j = 0; j < n; ++j) {
      const double share = 4.0 / plan.contacts[j].num_stance();
      for (int leg = 0; leg < kNumLegs; ++leg) {
        if (plan.contacts[j].stance[leg])
          guess[j].f[leg] = Vec3(0.0, 0.0, quarter_weight * share);
      }
    }
    return map.project(map.pack(guess), params);
  };

  // Initial point: feasibility-projected warm start when given.
  Eigen::VectorXd v = warm_actions != nullptr
                          ? map.project(map.pack(*warm_actions), params)
                          : static_guess();

  const auto eval = [&](const Eigen::VectorXd& vars, Eigen::VectorXd* grad) {
    const std::vector<Action> actions = map.unpack(vars, n);
    std::vector<Vec12> grad_full;
    double value;
    try {
      value = rollout_objective(x0, plan, actions, terminal_w, cfg, weights,
                                params, grad ? &grad_full : nullptr, nullptr);
    } catch (const std::domain_error&) {
      return kInf;  // trial rollout left the valid attitude range
    }
    if (grad) *grad = map.pack_grad(grad_full);
    return value;
  };

  HorizonSolution solution;
  Eigen::VectorXd grad(map.dim());
  double value = eval(v, &grad);
  if (!std::isfinite(value) && warm_actions != nullptr) {
    // The shifted warm start rolls through an invalid attitude; start fresh.
    v = static_guess();
    value = eval(v, &grad);
  }
  if (!std::isfinite(value)) {
    throw std::runtime_error("solve_horizon: objective not finite at initial point");
  }

  Eigen::VectorXd best_v = v;
  double best_value = value;
  double alpha = 1.0 / std::max(1e-12, inf_norm(grad));
  int iterations = 0;
  bool converged = false;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const double pg_norm = inf_norm(map.project(v - grad, params) - v);
    if (pg_norm <= cfg.tol) {
      converged = true;
      break;
    }

    // Backtracking Armijo search along the projection arc.
    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd v_trial;
    double value_trial = kInf;
    for (int bt = 0; bt < 60; ++bt) {
      v_trial = map.project(v - (step * alpha) * grad, params);
      const double directional = dot_seq(grad, v_trial - v);
      if (inf_norm(v_trial - v) == 0.0) break;  // projection pinned every move
      value_trial = eval(v_trial, nullptr);
      const bool ok = directional < 0.0
                          ? value_trial <= value + 1e-4 * directional
                          : value_trial < value;
      if (ok) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // stalled; return the best point found

    // Same rollout as the accepted trial, now with the adjoint pass.
    Eigen::VectorXd grad_trial(map.dim());
    eval(v_trial, &grad_trial);

    // Barzilai-Borwein spectral step for the next iteration.
    const Eigen::VectorXd s = v_trial - v;
    const Eigen::VectorXd y = grad_trial - grad;
    const double sy = dot_seq(s, y);
    const double ss = dot_seq(s, s);
    alpha = sy > 1e-16 * ss ? std::clamp(ss / sy, 1e-10, 1e10)
                            : std::min(1e10, alpha * 10.0);

    v = v_trial;
    value = value_trial;
    grad = grad_trial;
    ++iterations;
    if (value < best_value) {
      best_value = value;
      best_v = v;
    }
  }

  solution.actions = map.unpack(best_v, n);
  solution.objective = best_value;
  solution.iterations = iterations;
  solution.converged = converged;
  rollout_objective(x0, plan, solution.actions, terminal_w, cfg, weights, params,
                    nullptr, &solution.predicted);
  return solution;
}

Controller::Controller(const ControllerConfig& cfg, const CostWeights& weights,
                       const RobotParams& params, const CriticConfig& critic_cfg)
    : cfg_(cfg),
      weights_(weights),
      params_(params),
      critic_cfg_(critic_cfg),
      critic_(critic_cfg) {
  cfg_.validate();
  weights_.validate();
  params_.validate();
  critic_cfg_.validate();
}

std::vector<Action> Controller::shifted_warm_start() const {
  // Previous solution shifted by one step, last action duplicated.
  std::vector<Action> warm(last_.actions.size());
  for (size_t j = 0; j + 1 < warm.size(); ++j) warm[j] = last_.actions[j + 1];
  warm.back() = last_.actions.back();
  return warm;
}

Action Controller::mpc_step(const BodyState& x, const ReferencePlan& plan) {
  std::vector<Action> warm;
  if (has_memory_ && cfg_.warm_start) warm = shifted_warm_start();
  last_ = solve_horizon(x, plan, nullptr, warm.empty() ? nullptr : &warm, cfg_,
                        weights_, params_);
  has_memory_ = true;
  return last_.actions.front();
}

Action Controller::rql_step(const BodyState& x, const BodyState& x_des_now,
                            const ReferencePlan& plan) {
  const CriticWeights w =
      critic_cfg_.frozen ? critic_.w_prev : critic_update(critic_, params_);
  std::vector<Action> warm;
  if (has_memory_ && cfg_.warm_start) warm = shifted_warm_start();
  last_ = solve_horizon(x, plan, &w, warm.empty() ? nullptr : &warm, cfg_,
                        weights_, params_);
  has_memory_ = true;
  const Action u = last_.actions.front();
  const double r = running_cost(x, x_des_now, u, weights_, params_);
  push_sample(critic_, x, x_des_now, u, r, params_);
  return u;
}

Action Controller::step(const BodyState& x, const BodyState& x_des_now,
                        const ReferencePlan& plan) {
  if (plan.horizon() != cfg_.horizon)
    throw std::invalid_argument("Controller::step: plan length != horizon");
  return cfg_.mode == ControllerMode::kMpc ? mpc_step(x, plan)
                                           : rql_step(x, x_des_now, plan);
}

void Controller::reset() {
  has_memory_ = false;
  last_ = HorizonSolution{};
  critic_ = CriticState(critic_cfg_);
}

}  // namespace quadrol

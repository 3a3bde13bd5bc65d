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

#ifndef QUADROL_COSTS_H_
#define QUADROL_COSTS_H_

#include "quadrol/gait.hpp"
#include "quadrol/types.hpp"

namespace quadrol {

// Diagonal weights of the running cost r = ex' Px ex + eu' Pu eu over the
// state error and force error. Forward position tracking carries the largest
// weight; force deviations from the standing distribution are cheap.
struct CostWeights {
  Vec12 p_x = (Vec12() << 100, 50, 80, 10, 10, 20, 10, 5, 5, 3, 3, 3).finished();
  Vec12 p_u = Vec12::Constant(1e-3);

  std::vector<std::string> violations() const;
  void validate() const;
};

// Diagonal weights of the learned terminal value model: 12 for the state
// error block of z, 3 for the force-balance block.
struct CriticWeights {
  Vec15 w = Vec15::Zero();
};

// Reference standing force: each leg carries a quarter of the body weight,
// straight up in world frame.
Action u_desired(const RobotParams& params);

// z = [x - x_des (12); sum of foot forces - m*gravity (3)].
Vec15 q_input(const BodyState& x, const BodyState& x_des, const Action& u,
              const RobotParams& params);

double running_cost(const BodyState& x, const BodyState& x_des, const Action& u,
                    const CostWeights& weights, const RobotParams& params);

// d(running_cost)/d(flat state) and /d(flat action).
void running_cost_grad(const BodyState& x, const BodyState& x_des,
                       const Action& u, const CostWeights& weights,
                       const RobotParams& params, Vec12* grad_x, Vec12* grad_u);

// Terminal value model: q = z' diag(w) z with z = q_input(...). Linear in w.
double q_value(const BodyState& x, const BodyState& x_des, const Action& u,
               const CriticWeights& w, const RobotParams& params);

void q_value_grad(const BodyState& x, const BodyState& x_des, const Action& u,
                  const CriticWeights& w, const RobotParams& params,
                  Vec12* grad_x, Vec12* grad_u);

// Stacked per-leg inequality rows D u <= rhs: the four friction-pyramid rows
// |fx| <= mu*fz and |fy| <= mu*fz, the unilateral row -fz <= 0, and the cap
// row fz <= fz_max (the only affine one). Six rows per leg, leg-major.
inline constexpr int kRowsPerLeg = 6;
inline constexpr int kCapRowOffset = 5;  // position of the cap row within a leg block
struct FrictionRows {
  Eigen::Matrix<double, kRowsPerLeg * kNumLegs, kActionDim> d;
  Eigen::Matrix<double, kRowsPerLeg * kNumLegs, 1> rhs;
};
FrictionRows friction_rows(const RobotParams& params);

// Feasibility verdict of check_action: indices into the FrictionRows stack
// plus the legs carrying a nonzero force while flagged swing.
struct Feasibility {
  bool ok = true;
  std::vector<int> violated_rows;
  std::vector<int> swing_violations;
};

// ok iff all swing forces are exactly zero and every friction/unilateral row
// holds within 1e-8 (cap row within 1e-8 * fz_max).
Feasibility check_action(const Action& u, const ContactSchedule& schedule,
                         const RobotParams& params);

// Per-leg pyramid clamp: fz into [0, fz_max], then fx and fy into
// [-mu*fz, mu*fz]. Exact and separable; the result always passes the cone rows.
Vec3 project_pyramid(const Vec3& f, const RobotParams& params);

// Clamps every stance-leg force onto the pyramid and zeroes swing legs.
Action project_action(const Action& u, const ContactSchedule& schedule,
                      const RobotParams& params);

}  // namespace quadrol

#endif  // QUADROL_COSTS_H_

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

#include "quadrol/costs.hpp"

#include <algorithm>

namespace quadrol {

std::vector<std::string> CostWeights::violations() const {
  std::vector<std::string> v;
  if (!p_x.allFinite() || p_x.minCoeff() < 0.0)
    v.push_back("cost.p_x: entries must be finite and >= 0");
  if (!p_u.allFinite() || p_u.minCoeff() < 0.0)
    v.push_back("cost.p_u: entries must be finite and >= 0");
  if (p_x.allFinite() && p_x.maxCoeff() <= 0.0)
    v.push_back("cost.p_x: at least one entry must be > 0");
  return v;
}

void CostWeights::validate() const { throw_if_violations(violations()); }

Action u_desired(const RobotParams& params) {
  Action u;
  const double fz = params.m * params.gravity.norm() / 4.0;
  for (int leg = 0; leg < kNumLegs; ++leg) u.f[leg] = Vec3(0.0, 0.0, fz);
  return u;
}

Vec15 q_input(const BodyState& x, const BodyState& x_des, const Action& u,
              const RobotParams& params) {
  Vec3 force_sum = Vec3::Zero();
  for (int leg = 0; leg < kNumLegs; ++leg) force_sum += u.f[leg];
  Vec15 z;
  z.segment<12>(0) = x.flat() - x_des.flat();
  z.segment<3>(12) = force_sum - params.m * params.gravity;
  return z;
}

double running_cost(const BodyState& x, const BodyState& x_des, const Action& u,
                    const CostWeights& weights, const RobotParams& params) {
  const Vec12 ex = x.flat() - x_des.flat();
  const Vec12 eu = u.flat() - u_desired(params).flat();
  double cost = 0.0;
  for (int i = 0; i < kStateDim; ++i) cost += weights.p_x(i) * ex(i) * ex(i);
  for (int i = 0; i < kActionDim; ++i) cost += weights.p_u(i) * eu(i) * eu(i);
  return cost;
}

void running_cost_grad(const BodyState& x, const BodyState& x_des,
                       const Action& u, const CostWeights& weights,
                       const RobotParams& params, Vec12* grad_x, Vec12* grad_u) {
  const Vec12 ex = x.flat() - x_des.flat();
  const Vec12 eu = u.flat() - u_desired(params).flat();
  *grad_x = 2.0 * weights.p_x.cwiseProduct(ex);
  *grad_u = 2.0 * weights.p_u.cwiseProduct(eu);
}

double q_value(const BodyState& x, const BodyState& x_des, const Action& u,
               const CriticWeights& w, const RobotParams& params) {
  const Vec15 z = q_input(x, x_des, u, params);
  double q = 0.0;
  for (int i = 0; i < kQInputDim; ++i) q += w.w(i) * (z(i) * z(i));
  return q;
}

void q_value_grad(const BodyState& x, const BodyState& x_des, const Action& u,
                  const CriticWeights& w, const RobotParams& params,
                  Vec12* grad_x, Vec12* grad_u) {
  const Vec15 z = q_input(x, x_des, u, params);
  const Vec15 wz = 2.0 * w.w.cwiseProduct(z);
  *grad_x = wz.segment<12>(0);
  // The force-balance block sees every leg identically.
  for (int leg = 0; leg < kNumLegs; ++leg)
    grad_u->segment<3>(3 * leg) = wz.segment<3>(12);
}

FrictionRows friction_rows(const RobotParams& params) {
  FrictionRows rows;
  rows.d.setZero();
  rows.rhs.setZero();
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const int r0 = kRowsPerLeg * leg;
    const int c = 3 * leg;
    // fx - mu fz <= 0 ; -fx - mu fz <= 0 ; same for fy
    rows.d(r0 + 0, c + 0) = 1.0;  rows.d(r0 + 0, c + 2) = -params.mu;
    rows.d(r0 + 1, c + 0) = -1.0; rows.d(r0 + 1, c + 2) = -params.mu;
    rows.d(r0 + 2, c + 1) = 1.0;  rows.d(r0 + 2, c + 2) = -params.mu;
    rows.d(r0 + 3, c + 1) = -1.0; rows.d(r0 + 3, c + 2) = -params.mu;
    // -fz <= 0
    rows.d(r0 + 4, c + 2) = -1.0;
    // fz <= fz_max
    rows.d(r0 + kCapRowOffset, c + 2) = 1.0;
    rows.rhs(r0 + kCapRowOffset) = params.fz_max;
  }
  return rows;
}

Feasibility check_action(const Action& u, const ContactSchedule& schedule,
                         const RobotParams& params) {
  constexpr double kTol = 1e-8;
  Feasibility result;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const Vec3& f = u.f[leg];
    if (!schedule.stance[leg]) {
      if (f.x() != 0.0 || f.y() != 0.0 || f.z() != 0.0) {
        result.ok = false;
        result.swing_violations.push_back(leg);
      }
      continue;
    }
    const double bound = params.mu * f.z();
    const double row_vals[kRowsPerLeg] = {f.x() - bound, -f.x() - bound,
                                          f.y() - bound, -f.y() - bound,
                                          -f.z(), f.z() - params.fz_max};
    const double row_tols[kRowsPerLeg] = {kTol, kTol, kTol, kTol,
                                          kTol, kTol * params.fz_max};
    for (int r = 0; r < kRowsPerLeg; ++r) {
      if (row_vals[r] > row_tols[r]) {
        result.ok = false;
        result.violated_rows.push_back(kRowsPerLeg * leg + r);
      }
    }
  }
  return result;
}

Vec3 project_pyramid(const Vec3& f, const RobotParams& params) {
  Vec3 out = f;
  out.z() = std::clamp(out.z(), 0.0, params.fz_max);
  const double bound = params.mu * out.z();
  out.x() = std::clamp(out.x(), -bound, bound);
  out.y() = std::clamp(out.y(), -bound, bound);
  return out;
}

Action project_action(const Action& u, const ContactSchedule& schedule,
                      const RobotParams& params) {
  Action out;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    out.f[leg] = schedule.stance[leg] ? project_pyramid(u.f[leg], params)
                                      : Vec3::Zero();
  }
  return out;
}

}  // namespace quadrol

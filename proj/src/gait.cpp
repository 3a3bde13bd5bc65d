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

#include "quadrol/gait.hpp"

#include <cmath>

#include "quadrol/dynamics.hpp"

namespace quadrol {

namespace {

double frac(double x) { return x - std::floor(x); }

// Raibert-style half-stance placement from an arbitrary pose/velocity,
// projected to the ground plane.
Vec3 touchdown_target(const Vec3& p, const Mat3& rot, const Vec3& v, int leg,
                      const GaitConfig& cfg) {
  Vec3 target = p + rot * cfg.hip_offsets[leg] + v * (cfg.duty * cfg.period / 2.0);
  target.z() = 0.0;
  return target;
}

}  // namespace

Eigen::MatrixXd ContactSchedule::selection_matrix() const {
  const int swing = kNumLegs - num_stance();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(3 * swing, kActionDim);
  int row = 0;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    if (stance[leg]) continue;
    for (int k = 0; k < 3; ++k) c(row++, 3 * leg + k) = 1.0;
  }
  return c;
}

std::vector<std::string> GaitConfig::violations() const {
  std::vector<std::string> v;
  if (!(period > 0.0)) v.push_back("gait.period: must be > 0");
  if (!(duty > 0.5 && duty < 1.0)) v.push_back("gait.duty: must lie in (0.5, 1)");
  for (int leg = 0; leg < kNumLegs; ++leg) {
    if (!(phase_offsets[leg] >= 0.0 && phase_offsets[leg] < 1.0))
      v.push_back("gait.phase_offsets: entries must lie in [0, 1)");
  }
  if (mode == GaitMode::kTrot) {
    const bool diagonal_pairs =
        phase_offsets[kFrontLeft] == phase_offsets[kRearRight] &&
        phase_offsets[kFrontRight] == phase_offsets[kRearLeft] &&
        std::abs(frac(phase_offsets[kFrontLeft] - phase_offsets[kFrontRight] + 1.0) - 0.5) < 1e-12;
    if (!diagonal_pairs)
      v.push_back("gait.phase_offsets: trot requires diagonal pairs half a cycle apart");
  }
  if (!(body_height > 0.0)) v.push_back("gait.body_height: must be > 0");
  if (!v_des.allFinite()) v.push_back("gait.v_des: must be finite");
  if (!std::isfinite(yaw_rate_des)) v.push_back("gait.yaw_rate_des: must be finite");
  return v;
}

void GaitConfig::validate() const { throw_if_violations(violations()); }

ContactSchedule contact_at(double t, const GaitConfig& cfg) {
  ContactSchedule schedule;
  if (cfg.mode == GaitMode::kStand) return schedule;  // all stance
  for (int leg = 0; leg < kNumLegs; ++leg) {
    schedule.stance[leg] = frac(t / cfg.period + cfg.phase_offsets[leg]) < cfg.duty;
  }
  return schedule;
}

BodyState reference_state(double t, const GaitConfig& cfg, const Vec2& origin) {
  BodyState ref;
  ref.p = Vec3(origin.x() + cfg.v_des.x() * t, origin.y() + cfg.v_des.y() * t,
               cfg.body_height);
  ref.theta = Vec3(0.0, 0.0, cfg.yaw_rate_des * t);
  ref.v = Vec3(cfg.v_des.x(), cfg.v_des.y(), 0.0);
  ref.omega_b = Vec3(0.0, 0.0, cfg.yaw_rate_des);
  return ref;
}

void update_touchdowns(double t, const BodyState& x, const GaitConfig& cfg,
                       GaitState& state) {
  const ContactSchedule now = contact_at(t, cfg);
  const Mat3 rot = euler_to_rotation(x.theta);
  if (!state.initialized) {
    for (int leg = 0; leg < kNumLegs; ++leg) {
      state.touchdown[leg] = touchdown_target(x.p, rot, x.v, leg, cfg);
    }
    state.prev_stance = now.stance;
    state.ref_origin = x.p.head<2>();
    state.initialized = true;
    return;
  }
  for (int leg = 0; leg < kNumLegs; ++leg) {
    if (now.stance[leg] && !state.prev_stance[leg]) {
      state.touchdown[leg] = touchdown_target(x.p, rot, x.v, leg, cfg);
    }
  }
  state.prev_stance = now.stance;
}

ReferencePlan plan_reference(double t, const BodyState& x, int horizon,
                             double delta, const GaitConfig& cfg,
                             const GaitState& state) {
  if (horizon < 1) throw std::invalid_argument("plan_reference: horizon must be >= 1");

  ReferencePlan plan;
  plan.x_des.reserve(horizon);
  plan.levers.reserve(horizon);
  plan.contacts.reserve(horizon);

  const BodyState ref_now = reference_state(t, cfg, state.ref_origin);
  std::array<Vec3, kNumLegs> foot = state.touchdown;
  ContactSchedule prev = contact_at(t, cfg);

  for (int i = 0; i < horizon; ++i) {
    const double t_i = t + i * delta;
    const ContactSchedule schedule = contact_at(t_i, cfg);
    const BodyState ref_i = reference_state(t_i, cfg, state.ref_origin);

    // A leg landing inside the horizon gets a predicted touchdown from the
    // reference trajectory; legs already down keep their stored position.
    for (int leg = 0; leg < kNumLegs; ++leg) {
      if (i > 0 && schedule.stance[leg] && !prev.stance[leg]) {
        const Mat3 rot_des = euler_to_rotation(ref_i.theta);
        foot[leg] = touchdown_target(ref_i.p, rot_des, ref_i.v, leg, cfg);
      }
    }

    // Body position for the levers: the actual position advanced by the
    // reference motion, so the first step uses the measured pose exactly.
    const Vec3 p_body = x.p + (ref_i.p - ref_now.p);
    FootLevers levers;
    for (int leg = 0; leg < kNumLegs; ++leg) levers.r[leg] = foot[leg] - p_body;

    plan.x_des.push_back(reference_state(t + (i + 1) * delta, cfg, state.ref_origin));
    plan.levers.push_back(levers);
    plan.contacts.push_back(schedule);
    prev = schedule;
  }
  return plan;
}

}  // namespace quadrol

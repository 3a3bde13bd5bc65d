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

#ifndef QUADROL_GAIT_H_
#define QUADROL_GAIT_H_

#include <vector>

#include "quadrol/types.hpp"

namespace quadrol {

// Per-step stance/swing flags. Swing legs must exert zero force.
struct ContactSchedule {
  std::array<bool, kNumLegs> stance{true, true, true, true};

  int num_stance() const {
    int n = 0;
    for (bool s : stance) n += s ? 1 : 0;
    return n;
  }
  // Selection matrix C whose rows pick out the swing-leg force components,
  // so C*u = 0 iff every swing-leg force is zero. 3 rows per swing leg.
  Eigen::MatrixXd selection_matrix() const;
  bool operator==(const ContactSchedule&) const = default;
};

enum class GaitMode { kTrot, kStand };

struct GaitConfig {
  GaitMode mode = GaitMode::kTrot;
  double period = 0.5;  // gait cycle [s]
  double duty = 0.6;    // stance fraction, in (0.5, 1)
  std::array<double, kNumLegs> phase_offsets{0.0, 0.5, 0.5, 0.0};
  std::array<Vec3, kNumLegs> hip_offsets{
      Vec3(0.1805, 0.13, 0.0), Vec3(0.1805, -0.13, 0.0),
      Vec3(-0.1805, 0.13, 0.0), Vec3(-0.1805, -0.13, 0.0)};  // body frame [m]
  double body_height = 0.27;  // desired standing height [m]
  Vec2 v_des = Vec2(0.5, 0.0);  // desired planar velocity [m/s]
  double yaw_rate_des = 0.0;    // desired yaw rate [rad/s]

  std::vector<std::string> violations() const;
  void validate() const;
};

// Per-episode planner memory: world touchdown positions per leg, the stance
// flags seen at the previous update, and the planar origin of the open-loop
// reference trajectory.
struct GaitState {
  bool initialized = false;
  std::array<Vec3, kNumLegs> touchdown{Vec3::Zero(), Vec3::Zero(),
                                       Vec3::Zero(), Vec3::Zero()};
  std::array<bool, kNumLegs> prev_stance{};
  Vec2 ref_origin = Vec2::Zero();
};

// Horizon-length sequences handed to the controller each step. Storage index
// i covers prediction step i: x_des[i] is the desired state at t + (i+1)*delta
// (the state reached after applying the i-th action), while levers[i] and
// contacts[i] describe the stance geometry and schedule at t + i*delta, where
// that action is applied.
struct ReferencePlan {
  std::vector<BodyState> x_des;
  std::vector<FootLevers> levers;
  std::vector<ContactSchedule> contacts;

  int horizon() const { return static_cast<int>(x_des.size()); }
};

// Stance flags at time t: leg is in stance iff frac(t/period + offset) < duty.
ContactSchedule contact_at(double t, const GaitConfig& cfg);

// Open-loop reference state at time t: planar position integrated at v_des
// from `origin`, height at body_height, yaw at yaw_rate_des * t.
BodyState reference_state(double t, const GaitConfig& cfg, const Vec2& origin);

// Registers swing->stance transitions: on touchdown the leg's world foot
// position becomes p + R*hip + v*(duty*period)/2 projected to the ground
// plane z = 0. Stance feet keep their stored positions. The first call
// initializes every leg and the reference origin from the current state.
void update_touchdowns(double t, const BodyState& x, const GaitConfig& cfg,
                       GaitState& state);

// Builds the N-step reference plan at time t from the current body state and
// planner memory. Pure: identical inputs give identical plans.
ReferencePlan plan_reference(double t, const BodyState& x, int horizon,
                             double delta, const GaitConfig& cfg,
                             const GaitState& state);

}  // namespace quadrol

#endif  // QUADROL_GAIT_H_

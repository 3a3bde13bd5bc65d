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

#ifndef QUADROL_TYPES_H_
#define QUADROL_TYPES_H_

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace quadrol {

inline constexpr int kNumLegs = 4;
inline constexpr int kStateDim = 12;   // [p, theta, v, omega_b]
inline constexpr int kActionDim = 12;  // 4 legs x 3 force components
inline constexpr int kQInputDim = 15;  // state error (12) + force balance (3)

// The Euler-rate map is singular at cos(pitch) = 0; states this close to the
// singularity are rejected rather than clamped.
inline constexpr double kPitchCosGuard = 1e-3;

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec12 = Eigen::Matrix<double, 12, 1>;
using Vec15 = Eigen::Matrix<double, 15, 1>;
using Mat12 = Eigen::Matrix<double, 12, 12>;

// Leg order used everywhere: front-left, front-right, rear-left, rear-right.
enum Leg { kFrontLeft = 0, kFrontRight = 1, kRearLeft = 2, kRearRight = 3 };

// Body state of the single rigid body: world position, ZYX Euler angles
// (roll, pitch, yaw), world linear velocity, body-frame angular velocity.
struct BodyState {
  Vec3 p = Vec3::Zero();        // [m]
  Vec3 theta = Vec3::Zero();    // [rad]
  Vec3 v = Vec3::Zero();        // [m/s]
  Vec3 omega_b = Vec3::Zero();  // [rad/s]

  Vec12 flat() const {
    Vec12 x;
    x << p, theta, v, omega_b;
    return x;
  }
  static BodyState from_flat(const Vec12& x) {
    BodyState s;
    s.p = x.segment<3>(0);
    s.theta = x.segment<3>(3);
    s.v = x.segment<3>(6);
    s.omega_b = x.segment<3>(9);
    return s;
  }
  bool finite() const { return flat().allFinite(); }
};

// One ground reaction force per leg, world frame.
struct Action {
  std::array<Vec3, kNumLegs> f{Vec3::Zero(), Vec3::Zero(), Vec3::Zero(),
                               Vec3::Zero()};

  Vec12 flat() const {
    Vec12 u;
    for (int leg = 0; leg < kNumLegs; ++leg) u.segment<3>(3 * leg) = f[leg];
    return u;
  }
  static Action from_flat(const Vec12& u) {
    Action a;
    for (int leg = 0; leg < kNumLegs; ++leg) a.f[leg] = u.segment<3>(3 * leg);
    return a;
  }
};

// Lever per leg: foot contact position minus body position, world frame.
struct FootLevers {
  std::array<Vec3, kNumLegs> r{Vec3::Zero(), Vec3::Zero(), Vec3::Zero(),
                               Vec3::Zero()};
};

struct RobotParams {
  double m = 12.0;                                          // [kg]
  Mat3 inertia_b = Vec3(0.017, 0.057, 0.065).asDiagonal();  // body frame [kg m^2]
  Vec3 gravity = Vec3(0.0, 0.0, 9.81);                      // [m/s^2]
  double mu = 0.3;                                          // friction coefficient
  double fz_max = 120.0;                                    // per-leg vertical cap [N]

  std::vector<std::string> violations() const;
  void validate() const;  // throws std::invalid_argument on any violation
};

// Joins violation strings and throws std::invalid_argument unless empty.
void throw_if_violations(const std::vector<std::string>& violations);

}  // namespace quadrol

#endif  // QUADROL_TYPES_H_

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

#include "quadrol/dynamics.hpp"

#include <sstream>
#include <stdexcept>

namespace quadrol {

namespace {

void check_pitch(const Vec3& theta) {
  if (!(std::abs(std::cos(theta(1))) > kPitchCosGuard)) {
    std::ostringstream msg;
    msg << "pitch " << theta(1) << " within singularity guard of the Euler-rate map";
    throw std::domain_error(msg.str());
  }
}

}  // namespace

Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return s;
}

Mat3 euler_to_rotation(const Vec3& theta) {
  check_pitch(theta);
  const double ca = std::cos(theta(0)), sa = std::sin(theta(0));
  const double cb = std::cos(theta(1)), sb = std::sin(theta(1));
  const double cc = std::cos(theta(2)), sc = std::sin(theta(2));
  Mat3 rx, ry, rz;
  rx << 1, 0, 0, 0, ca, -sa, 0, sa, ca;
  ry << cb, 0, sb, 0, 1, 0, -sb, 0, cb;
  rz << cc, -sc, 0, sc, cc, 0, 0, 0, 1;
  return rz * ry * rx;
}

Mat3 euler_rate_matrix_inverse(const Vec3& theta) {
  check_pitch(theta);
  const double ca = std::cos(theta(0)), sa = std::sin(theta(0));
  const double cb = std::cos(theta(1)), tb = std::tan(theta(1));
  Mat3 jinv;
  jinv << 1.0, sa * tb, ca * tb,
          0.0, ca, -sa,
          0.0, sa / cb, ca / cb;
  return jinv;
}

Vec12 dynamics(const BodyState& x, const FootLevers& levers, const Action& u,
               const RobotParams& params) {
  const Mat3 rot = euler_to_rotation(x.theta);
  const Mat3 jinv = euler_rate_matrix_inverse(x.theta);

  Vec3 force_sum = Vec3::Zero();
  Vec3 torque_world = Vec3::Zero();
  for (int leg = 0; leg < kNumLegs; ++leg) {
    force_sum += u.f[leg];
    torque_world += levers.r[leg].cross(u.f[leg]);
  }

  const Vec3 i_omega = params.inertia_b * x.omega_b;
  const Vec3 omega_dot = params.inertia_b.inverse() *
                         (rot.transpose() * torque_world - x.omega_b.cross(i_omega));

  Vec12 dx;
  dx.segment<3>(0) = x.v;
  dx.segment<3>(3) = jinv * x.omega_b;
  dx.segment<3>(6) = force_sum / params.m - params.gravity;
  dx.segment<3>(9) = omega_dot;
  return dx;
}

DynamicsJacobians dynamics_jacobians(const BodyState& x,
                                     const FootLevers& levers, const Action& u,
                                     const RobotParams& params) {
  check_pitch(x.theta);
  const double ca = std::cos(x.theta(0)), sa = std::sin(x.theta(0));
  const double cb = std::cos(x.theta(1)), sb = std::sin(x.theta(1));
  const double cc = std::cos(x.theta(2)), sc = std::sin(x.theta(2));
  const double tb = sb / cb;

  Mat3 rx, ry, rz;
  rx << 1, 0, 0, 0, ca, -sa, 0, sa, ca;
  ry << cb, 0, sb, 0, 1, 0, -sb, 0, cb;
  rz << cc, -sc, 0, sc, cc, 0, 0, 0, 1;
  const Mat3 rot = rz * ry * rx;

  Mat3 drx, dry, drz;
  drx << 0, 0, 0, 0, -sa, -ca, 0, ca, -sa;
  dry << -sb, 0, cb, 0, 0, 0, -cb, 0, -sb;
  drz << -sc, -cc, 0, cc, -sc, 0, 0, 0, 0;
  const Mat3 drot_roll = rz * ry * drx;
  const Mat3 drot_pitch = rz * dry * rx;
  const Mat3 drot_yaw = drz * ry * rx;

  Mat3 jinv;
  jinv << 1.0, sa * tb, ca * tb,
          0.0, ca, -sa,
          0.0, sa / cb, ca / cb;
  Mat3 djinv_roll, djinv_pitch;
  djinv_roll << 0.0, ca * tb, -sa * tb,
                0.0, -sa, -ca,
                0.0, ca / cb, -sa / cb;
  const double cb2 = cb * cb;
  djinv_pitch << 0.0, sa / cb2, ca / cb2,
                 0.0, 0.0, 0.0,
                 0.0, sa * sb / cb2, ca * sb / cb2;

  Vec3 torque_world = Vec3::Zero();
  for (int leg = 0; leg < kNumLegs; ++leg) {
    torque_world += levers.r[leg].cross(u.f[leg]);
  }
  const Mat3 inertia_inv = params.inertia_b.inverse();
  const Vec3 i_omega = params.inertia_b * x.omega_b;

  DynamicsJacobians jac;
  Mat12& a = jac.dfdx;
  // dp/dt = v
  a.block<3, 3>(0, 6) = Mat3::Identity();
  // d(theta)/dt = Jinv(theta) omega_b
  a.block<3, 1>(3, 3) = djinv_roll * x.omega_b;
  a.block<3, 1>(3, 4) = djinv_pitch * x.omega_b;
  a.block<3, 3>(3, 9) = jinv;
  // d(omega_b)/dt: attitude enters through R^T, omega through the gyroscopic term
  a.block<3, 1>(9, 3) = inertia_inv * (drot_roll.transpose() * torque_world);
  a.block<3, 1>(9, 4) = inertia_inv * (drot_pitch.transpose() * torque_world);
  a.block<3, 1>(9, 5) = inertia_inv * (drot_yaw.transpose() * torque_world);
  a.block<3, 3>(9, 9) =
      inertia_inv * (skew(i_omega) - skew(x.omega_b) * params.inertia_b);

  Mat12& b = jac.dfdu;
  const Mat3 rot_t = rot.transpose();
  for (int leg = 0; leg < kNumLegs; ++leg) {
    b.block<3, 3>(6, 3 * leg) = Mat3::Identity() / params.m;
    b.block<3, 3>(9, 3 * leg) = inertia_inv * rot_t * skew(levers.r[leg]);
  }
  return jac;
}

BodyState predict_euler(double delta, const BodyState& x,
                        const FootLevers& levers, const Action& u,
                        const RobotParams& params) {
  if (delta < 0.0) throw std::invalid_argument("predict_euler: delta must be >= 0");
  const Vec12 dx = dynamics(x, levers, u, params);
  return BodyState::from_flat(x.flat() + delta * dx);
}

BodyState integrate_plant(double delta, int substeps, const BodyState& x,
                          const FootLevers& levers, const Action& u,
                          const RobotParams& params) {
  if (substeps < 1) throw std::invalid_argument("integrate_plant: substeps must be >= 1");
  const double h = delta / substeps;
  Vec12 state = x.flat();
  for (int s = 0; s < substeps; ++s) {
    const Vec12 k1 = dynamics(BodyState::from_flat(state), levers, u, params);
    const Vec12 k2 =
        dynamics(BodyState::from_flat(state + 0.5 * h * k1), levers, u, params);
    const Vec12 k3 =
        dynamics(BodyState::from_flat(state + 0.5 * h * k2), levers, u, params);
    const Vec12 k4 =
        dynamics(BodyState::from_flat(state + h * k3), levers, u, params);
    state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return BodyState::from_flat(state);
}

}  // namespace quadrol

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

#ifndef QUADROL_DYNAMICS_H_
#define QUADROL_DYNAMICS_H_

#include "quadrol/types.hpp"

namespace quadrol {

// ZYX rotation R = Rz(yaw) Ry(pitch) Rx(roll), body to world.
// Throws std::domain_error when |cos(pitch)| <= kPitchCosGuard.
Mat3 euler_to_rotation(const Vec3& theta);

// Rate map such that d(theta)/dt = euler_rate_matrix_inverse(theta) * omega_b.
// Same singularity guard as euler_to_rotation.
Mat3 euler_rate_matrix_inverse(const Vec3& theta);

Mat3 skew(const Vec3& v);

// Continuous dynamics of the single rigid body under world-frame foot forces:
//   d/dt [p; theta; v; omega_b] =
//     [v; Jinv(theta) omega_b; sum(f_i)/m - g;
//      I_B^-1 (R^T sum(r_i x f_i) - omega_b x I_B omega_b)].
Vec12 dynamics(const BodyState& x, const FootLevers& levers, const Action& u,
               const RobotParams& params);

// Jacobians of dynamics() with respect to the flat state and flat action,
// evaluated at (x, levers, u). Used by the adjoint gradient of the rollout.
struct DynamicsJacobians {
  Mat12 dfdx = Mat12::Zero();
  Mat12 dfdu = Mat12::Zero();
};
DynamicsJacobians dynamics_jacobians(const BodyState& x,
                                     const FootLevers& levers, const Action& u,
                                     const RobotParams& params);

// One explicit Euler step: x + delta * dynamics(x, levers, u).
BodyState predict_euler(double delta, const BodyState& x,
                        const FootLevers& levers, const Action& u,
                        const RobotParams& params);

// Advances the state by delta with classical RK4 in `substeps` equal
// sub-intervals, holding u and levers constant (zero-order hold).
BodyState integrate_plant(double delta, int substeps, const BodyState& x,
                          const FootLevers& levers, const Action& u,
                          const RobotParams& params);

}  // namespace quadrol

#endif  // QUADROL_DYNAMICS_H_

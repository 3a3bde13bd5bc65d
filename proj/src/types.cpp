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

#include "quadrol/types.hpp"

#include <sstream>
#include <stdexcept>

namespace quadrol {

std::vector<std::string> RobotParams::violations() const {
  std::vector<std::string> v;
  if (!(m > 0.0)) v.push_back("robot.mass: must be > 0");
  if (!inertia_b.allFinite() || !inertia_b.isApprox(inertia_b.transpose(), 1e-12)) {
    v.push_back("robot.inertia: must be finite and symmetric");
  } else {
    Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia_b);
    if (eig.eigenvalues().minCoeff() <= 0.0)
      v.push_back("robot.inertia: must be positive definite");
  }
  if (!gravity.allFinite()) v.push_back("robot.gravity: must be finite");
  if (!(mu > 0.0)) v.push_back("robot.mu: must be > 0");
  if (!(fz_max > m * gravity.norm() / 4.0))
    v.push_back("robot.fz_max: must exceed m*|gravity|/4");
  return v;
}

void RobotParams::validate() const { throw_if_violations(violations()); }

void throw_if_violations(const std::vector<std::string>& violations) {
  if (violations.empty()) return;
  std::ostringstream msg;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) msg << "; ";
    msg << violations[i];
  }
  throw std::invalid_argument(msg.str());
}

}  // namespace quadrol

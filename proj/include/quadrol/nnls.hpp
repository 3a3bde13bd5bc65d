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

#ifndef QUADROL_NNLS_H_
#define QUADROL_NNLS_H_

#include <Eigen/Dense>

namespace quadrol {

// Minimizes 0.5 w'Gw - b'w subject to w >= 0 for symmetric positive definite
// G, by a Lawson-Hanson style active-set iteration on the normal-equations
// form. Deterministic; terminates at the exact KKT point (first-order
// residual below tol, relative to the scale of b).
Eigen::VectorXd nnls_solve_qp(const Eigen::MatrixXd& g, const Eigen::VectorXd& b,
                              double tol = 1e-8);

}  // namespace quadrol

#endif  // QUADROL_NNLS_H_

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

#include "quadrol/nnls.hpp"

#include <stdexcept>
#include <vector>

namespace quadrol {

namespace {

// Solves the passive-set subproblem G_PP x_P = b_P.
Eigen::VectorXd solve_passive(const Eigen::MatrixXd& g, const Eigen::VectorXd& b,
                              const std::vector<int>& passive) {
  const int np = static_cast<int>(passive.size());
  Eigen::MatrixXd gpp(np, np);
  Eigen::VectorXd bp(np);
  for (int i = 0; i < np; ++i) {
    bp(i) = b(passive[i]);
    for (int j = 0; j < np; ++j) gpp(i, j) = g(passive[i], passive[j]);
  }
  return gpp.ldlt().solve(bp);
}

}  // namespace

Eigen::VectorXd nnls_solve_qp(const Eigen::MatrixXd& g, const Eigen::VectorXd& b,
                              double tol) {
  const int n = static_cast<int>(b.size());
  if (g.rows() != n || g.cols() != n)
    throw std::invalid_argument("nnls_solve_qp: dimension mismatch");

  const double kkt_tol = tol * std::max(1.0, b.cwiseAbs().maxCoeff());
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  std::vector<bool> in_passive(n, false);

  // Outer loop: grow the passive set one most-violated coordinate at a time.
  const int max_outer = 3 * n + 10;
  for (int outer = 0; outer < max_outer; ++outer) {
    const Eigen::VectorXd grad = g * w - b;
    int enter = -1;
    double most_negative = -kkt_tol;
    for (int i = 0; i < n; ++i) {
      if (!in_passive[i] && grad(i) < most_negative) {
        most_negative = grad(i);
        enter = i;
      }
    }
    if (enter < 0) break;  // KKT satisfied
    in_passive[enter] = true;

    // Inner loop: restore primal feasibility of the passive subproblem.
    for (int inner = 0; inner < max_outer; ++inner) {
      std::vector<int> passive;
      for (int i = 0; i < n; ++i)
        if (in_passive[i]) passive.push_back(i);
      const Eigen::VectorXd wp = solve_passive(g, b, passive);

      double min_wp = 0.0;
      for (int i = 0; i < static_cast<int>(passive.size()); ++i)
        min_wp = std::min(min_wp, wp(i));
      if (min_wp >= 0.0) {
        w.setZero();
        for (int i = 0; i < static_cast<int>(passive.size()); ++i)
          w(passive[i]) = wp(i);
        break;
      }

      // Step from w toward wp, stopping where the first coordinate hits zero;
      // coordinates pinned at zero leave the passive set.
      double alpha = 1.0;
      for (int i = 0; i < static_cast<int>(passive.size()); ++i) {
        if (wp(i) < 0.0) {
          const double wi = w(passive[i]);
          alpha = std::min(alpha, wi / (wi - wp(i)));
        }
      }
      for (int i = 0; i < static_cast<int>(passive.size()); ++i) {
        const int idx = passive[i];
        w(idx) += alpha * (wp(i) - w(idx));
        if (wp(i) < 0.0 && w(idx) <= 1e-14 * std::max(1.0, b.cwiseAbs().maxCoeff())) {
          w(idx) = 0.0;
          in_passive[idx] = false;
        }
      }
    }
  }
  return w;
}

}  // namespace quadrol

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

#include "quadrol/critic.hpp"

#include <stdexcept>

#include "quadrol/nnls.hpp"

namespace quadrol {

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("ReplayBuffer: capacity must be >= 1");
  ring_.resize(capacity);
}

void ReplayBuffer::push(const CriticSample& sample) {
  if (size_ < capacity_) {
    ring_[(head_ + size_) % capacity_] = sample;
    ++size_;
  } else {
    ring_[head_] = sample;  // evict the oldest
    head_ = (head_ + 1) % capacity_;
  }
}

void ReplayBuffer::clear() {
  head_ = 0;
  size_ = 0;
}

const CriticSample& ReplayBuffer::at(int i) const {
  if (i < 0 || i >= size_) throw std::out_of_range("ReplayBuffer::at");
  return ring_[(head_ + i) % capacity_];
}

std::vector<std::string> CriticConfig::violations() const {
  std::vector<std::string> v;
  if (buffer_size < 2) v.push_back("critic.buffer_size: must be >= 2");
  if (!(lambda >= 0.0)) v.push_back("critic.lambda: must be >= 0");
  if (!(w_init >= 0.0)) v.push_back("critic.w_init: must be >= 0");
  return v;
}

void CriticConfig::validate() const { throw_if_violations(violations()); }

namespace {

double dot15(const Vec15& a, const Vec15& b) {
  double s = 0.0;
  for (int i = 0; i < kQInputDim; ++i) s += a(i) * b(i);
  return s;
}

}  // namespace

double td_error(int i, const CriticWeights& w, const CriticState& state,
                const RobotParams& params) {
  (void)params;
  const CriticSample& now = state.buffer.at(i);
  const CriticSample& next = state.buffer.at(i + 1);
  return dot15(w.w, now.phi) - now.r - dot15(state.w_prev.w, next.phi);
}

CriticWeights critic_update(CriticState& state, const RobotParams& params) {
  (void)params;
  const int n = state.buffer.size();
  if (n < 2) return state.w_prev;

  // The residuals are linear in w: e_i(w) = phi_i' w - y_i with the bootstrap
  // target y_i = r_i + phi_{i+1}' w_prev. Assemble the normal equations of
  // the ridge-regularized least squares directly.
  Eigen::MatrixXd gram = state.lambda_reg * Eigen::MatrixXd::Identity(kQInputDim, kQInputDim);
  Eigen::VectorXd rhs = state.lambda_reg * state.w_prev.w;
  for (int i = 0; i + 1 < n; ++i) {
    const CriticSample& now = state.buffer.at(i);
    const CriticSample& next = state.buffer.at(i + 1);
    const double target = now.r + dot15(state.w_prev.w, next.phi);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(now.phi, 1.0);
    rhs += target * now.phi;
  }
  gram.triangularView<Eigen::StrictlyUpper>() =
      gram.triangularView<Eigen::StrictlyLower>().transpose();

  const Eigen::VectorXd solution = nnls_solve_qp(gram, rhs, 1e-8);

  // The active-set solve is exact up to rounding; fall back to w_prev in the
  // measure-zero event that it failed to improve the regularized objective.
  const auto quad = [&](const Eigen::VectorXd& w) {
    return 0.5 * w.dot(gram * w) - rhs.dot(w);
  };
  CriticWeights result;
  result.w = (quad(solution) <= quad(state.w_prev.w)) ? Vec15(solution)
                                                      : state.w_prev.w;
  state.w_prev = result;
  return result;
}

void push_sample(CriticState& state, const BodyState& x, const BodyState& x_des,
                 const Action& u, double r_value, const RobotParams& params) {
  CriticSample sample;
  sample.x = x;
  sample.x_des = x_des;
  sample.u = u;
  sample.r = r_value;
  const Vec15 z = q_input(x, x_des, u, params);
  sample.phi = z.cwiseProduct(z);
  state.buffer.push(sample);
}

}  // namespace quadrol

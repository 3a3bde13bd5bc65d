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

#ifndef QUADROL_CRITIC_H_
#define QUADROL_CRITIC_H_

#include <vector>

#include "quadrol/costs.hpp"
#include "quadrol/types.hpp"

namespace quadrol {

// One transition record: state, its reference, the action applied there, the
// running cost observed, and the cached feature vector phi = z .* z so the
// value model evaluates as q = w' phi.
struct CriticSample {
  BodyState x;
  BodyState x_des;
  Action u;
  double r = 0.0;
  Vec15 phi = Vec15::Zero();
};

// Ring of the most recent samples, strictly consecutive in control-step time.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void push(const CriticSample& sample);
  void clear();
  int size() const { return size_; }
  int capacity() const { return capacity_; }
  // i = 0 is the oldest sample currently held.
  const CriticSample& at(int i) const;

 private:
  std::vector<CriticSample> ring_;
  int capacity_;
  int head_ = 0;  // index of the oldest sample
  int size_ = 0;
};

struct CriticConfig {
  int buffer_size = 500;
  double lambda = 10.0;   // ridge anchor toward the previous weights
  double w_init = 1e-3;   // uniform initial weight value
  bool frozen = false;    // keep weights at their initial value (diagnostics)

  std::vector<std::string> violations() const;
  void validate() const;
};

struct CriticState {
  explicit CriticState(const CriticConfig& cfg)
      : w_prev{Vec15::Constant(cfg.w_init)},
        buffer(cfg.buffer_size),
        lambda_reg(cfg.lambda) {}

  CriticWeights w_prev;
  ReplayBuffer buffer;
  double lambda_reg;
};

// Temporal-difference residual over the consecutive buffer pair (i, i+1):
//   e_i(w) = q(sample_i; w) - r_i - q(sample_{i+1}; w_prev).
// The bootstrap target uses the frozen w_prev. Throws std::out_of_range
// unless both samples exist.
double td_error(int i, const CriticWeights& w, const CriticState& state,
                const RobotParams& params);

// Minimizes 0.5 sum_i e_i(w)^2 + 0.5 lambda |w - w_prev|^2 over w >= 0 via
// the exact active-set solve (the residuals are linear in w). The returned
// weights become w_prev for the next step. With fewer than two samples the
// buffer defines no residual and w_prev is returned unchanged.
CriticWeights critic_update(CriticState& state, const RobotParams& params);

void push_sample(CriticState& state, const BodyState& x, const BodyState& x_des,
                 const Action& u, double r_value, const RobotParams& params);

}  // namespace quadrol

#endif  // QUADROL_CRITIC_H_

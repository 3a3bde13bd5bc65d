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

#include <gtest/gtest.h>

namespace quadrol {
namespace {

TEST(ContactAt, AllFourStanceAtCycleStart) {
  GaitConfig cfg;  // trot offsets (0, .5, .5, 0), duty 0.6
  const ContactSchedule schedule = contact_at(0.0, cfg);
  for (int leg = 0; leg < kNumLegs; ++leg) EXPECT_TRUE(schedule.stance[leg]);
}

TEST(ContactAt, DiagonalPairSwingsLateInPhase) {
  GaitConfig cfg;
  const ContactSchedule schedule = contact_at(0.45 * cfg.period, cfg);
  EXPECT_TRUE(schedule.stance[kFrontLeft]);   // frac 0.45 < 0.6
  EXPECT_TRUE(schedule.stance[kRearRight]);
  EXPECT_FALSE(schedule.stance[kFrontRight]);  // frac 0.95 >= 0.6
  EXPECT_FALSE(schedule.stance[kRearLeft]);
}

// Counting oracle: sampled stance fraction equals the duty factor.
TEST(ContactAt, StanceFractionEqualsDuty) {
  GaitConfig cfg;
  const int samples = static_cast<int>(cfg.period / 0.001);
  int stance_count[kNumLegs] = {0, 0, 0, 0};
  for (int k = 0; k < samples; ++k) {
    const ContactSchedule schedule = contact_at(k * 0.001, cfg);
    for (int leg = 0; leg < kNumLegs; ++leg)
      stance_count[leg] += schedule.stance[leg] ? 1 : 0;
  }
  for (int leg = 0; leg < kNumLegs; ++leg)
    EXPECT_NEAR(stance_count[leg], cfg.duty * samples, 1.0) << "leg " << leg;
}

TEST(ContactAt, TrotKeepsAtLeastTwoLegsDown) {
  GaitConfig cfg;
  for (int k = 0; k < 2000; ++k)
    EXPECT_GE(contact_at(k * 0.001, cfg).num_stance(), 2);
}

TEST(ContactAt, StandModeAlwaysAllStance) {
  GaitConfig cfg;
  cfg.mode = GaitMode::kStand;
  for (double t : {0.0, 0.21, 0.47, 1.93}) {
    EXPECT_EQ(contact_at(t, cfg).num_stance(), kNumLegs);
  }
}

TEST(SelectionMatrix, PicksExactlySwingComponents) {
  ContactSchedule schedule;
  schedule.stance = {true, false, true, false};
  const Eigen::MatrixXd c = schedule.selection_matrix();
  ASSERT_EQ(c.rows(), 6);
  Action u;
  u.f[kFrontLeft] = Vec3(1.0, 2.0, 3.0);
  u.f[kRearLeft] = Vec3(-1.0, 0.5, 9.0);
  EXPECT_LT((c * u.flat()).cwiseAbs().maxCoeff(), 1e-15);
  u.f[kFrontRight] = Vec3(0.0, 0.0, 1e-3);
  EXPECT_GT((c * u.flat()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(UpdateTouchdowns, RestingPlacementSitsUnderHips) {
  GaitConfig cfg;
  cfg.mode = GaitMode::kStand;
  BodyState x;
  x.p = Vec3(0.0, 0.0, 0.3);
  GaitState state;
  update_touchdowns(0.0, x, cfg, state);
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const Vec3 lever = state.touchdown[leg] - x.p;
    EXPECT_NEAR(lever.x(), cfg.hip_offsets[leg].x(), 1e-12);
    EXPECT_NEAR(lever.y(), cfg.hip_offsets[leg].y(), 1e-12);
    EXPECT_NEAR(lever.z(), -0.3, 1e-12);
    EXPECT_EQ(state.touchdown[leg].z(), 0.0);
  }
}

TEST(UpdateTouchdowns, MovingPlacementShiftsHalfStanceAhead) {
  GaitConfig cfg;  // duty * period = 0.3
  BodyState x;
  x.p = Vec3(1.0, 0.0, 0.27);
  x.v = Vec3(0.5, 0.0, 0.0);
  GaitState state;
  update_touchdowns(0.0, x, cfg, state);
  for (int leg = 0; leg < kNumLegs; ++leg) {
    EXPECT_NEAR(state.touchdown[leg].x(), 1.0 + cfg.hip_offsets[leg].x() + 0.075, 1e-12);
  }
}

TEST(UpdateTouchdowns, StanceFeetStayWorldFixed) {
  GaitConfig cfg;
  BodyState x;
  x.p = Vec3(0.0, 0.0, 0.27);
  x.v = Vec3(0.5, 0.0, 0.0);
  GaitState state;
  update_touchdowns(0.0, x, cfg, state);
  const Vec3 fl0 = state.touchdown[kFrontLeft];

  // Front-left stays in stance through t = 0.29 * period / ... within duty.
  x.p.x() += 0.05;
  update_touchdowns(0.1, x, cfg, state);
  EXPECT_EQ(state.touchdown[kFrontLeft], fl0);
}

TEST(UpdateTouchdowns, MeanStanceLeverTracksBodyHeight) {
  GaitConfig cfg;
  GaitState state;
  BodyState x;
  x.p = Vec3(0.0, 0.0, cfg.body_height);
  x.v = Vec3(cfg.v_des.x(), cfg.v_des.y(), 0.0);

  double lever_z_sum = 0.0;
  int count = 0;
  const double dt = 0.002;
  for (double t = 0.0; t < cfg.period; t += dt) {
    update_touchdowns(t, x, cfg, state);
    const ContactSchedule schedule = contact_at(t, cfg);
    for (int leg = 0; leg < kNumLegs; ++leg) {
      if (!schedule.stance[leg]) continue;
      lever_z_sum += (state.touchdown[leg] - x.p).z();
      ++count;
    }
    x.p += x.v * dt;
  }
  EXPECT_NEAR(lever_z_sum / count, -cfg.body_height, 0.05 * cfg.body_height);
}

TEST(PlanReference, StationaryReferenceIsConstant) {
  GaitConfig cfg;
  cfg.v_des = Vec2::Zero();
  cfg.yaw_rate_des = 0.0;
  BodyState x;
  x.p = Vec3(0.4, -0.2, cfg.body_height);
  GaitState state;
  update_touchdowns(0.0, x, cfg, state);
  const ReferencePlan plan = plan_reference(3.7, x, 5, 0.03, cfg, state);
  for (const BodyState& des : plan.x_des) {
    EXPECT_NEAR(des.p.x(), 0.4, 1e-12);
    EXPECT_NEAR(des.p.y(), -0.2, 1e-12);
    EXPECT_NEAR(des.p.z(), cfg.body_height, 1e-12);
    EXPECT_LT(des.theta.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(des.v.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(des.omega_b.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PlanReference, ConstantVelocitySpacing) {
  GaitConfig cfg;
  cfg.v_des = Vec2(0.5, 0.0);
  BodyState x;
  x.p = Vec3(0.0, 0.0, cfg.body_height);
  GaitState state;
  update_touchdowns(0.0, x, cfg, state);
  const ReferencePlan plan = plan_reference(0.0, x, 3, 0.03, cfg, state);
  EXPECT_NEAR(plan.x_des[1].p.x() - plan.x_des[0].p.x(), 0.015, 1e-12);
  EXPECT_NEAR(plan.x_des[2].p.x() - plan.x_des[1].p.x(), 0.015, 1e-12);
}

TEST(PlanReference, ContactsMatchContactAt) {
  GaitConfig cfg;
  BodyState x;
  x.p = Vec3(0.0, 0.0, cfg.body_height);
  GaitState state;
  update_touchdowns(0.0, x, cfg, state);
  for (double t : {0.0, 0.123, 0.4, 1.77}) {
    const ReferencePlan plan = plan_reference(t, x, 8, 0.03, cfg, state);
    for (int i = 0; i < plan.horizon(); ++i) {
      EXPECT_EQ(plan.contacts[i], contact_at(t + i * 0.03, cfg)) << "step " << i;
    }
  }
}

TEST(PlanReference, DeterministicBitIdentical) {
  GaitConfig cfg;
  BodyState x;
  x.p = Vec3(0.1, 0.2, cfg.body_height);
  x.v = Vec3(0.3, 0.0, 0.0);
  GaitState state;
  update_touchdowns(0.0, x, cfg, state);
  const ReferencePlan a = plan_reference(0.27, x, 6, 0.03, cfg, state);
  const ReferencePlan b = plan_reference(0.27, x, 6, 0.03, cfg, state);
  for (int i = 0; i < a.horizon(); ++i) {
    EXPECT_EQ(a.x_des[i].flat(), b.x_des[i].flat());
    for (int leg = 0; leg < kNumLegs; ++leg)
      EXPECT_EQ(a.levers[i].r[leg], b.levers[i].r[leg]);
    EXPECT_EQ(a.contacts[i], b.contacts[i]);
  }
}

TEST(PlanReference, FirstStepLeversUseActualBodyPosition) {
  GaitConfig cfg;
  BodyState x;
  x.p = Vec3(0.05, -0.03, 0.25);  // drifted off the reference
  GaitState state;
  update_touchdowns(0.0, x, cfg, state);
  const ReferencePlan plan = plan_reference(0.0, x, 4, 0.03, cfg, state);
  for (int leg = 0; leg < kNumLegs; ++leg) {
    EXPECT_EQ(plan.levers[0].r[leg], Vec3(state.touchdown[leg] - x.p));
  }
}

TEST(ReferenceState, ContinuousInTime) {
  GaitConfig cfg;
  cfg.v_des = Vec2(0.5, -0.2);
  const Vec2 origin(1.0, 2.0);
  const double eps = 1e-4;
  for (double t : {0.0, 0.5, 3.21}) {
    const Vec3 d = reference_state(t + eps, cfg, origin).p -
                   reference_state(t, cfg, origin).p;
    EXPECT_LE(d.norm(), cfg.v_des.norm() * eps + 1e-12);
  }
}

TEST(PlanReference, ZeroHorizonThrows) {
  GaitConfig cfg;
  BodyState x;
  x.p = Vec3(0.0, 0.0, cfg.body_height);
  GaitState state;
  update_touchdowns(0.0, x, cfg, state);
  EXPECT_THROW(plan_reference(0.0, x, 0, 0.03, cfg, state), std::invalid_argument);
}

TEST(GaitConfig, ValidationCatchesBadDuty) {
  GaitConfig cfg;
  cfg.duty = 0.4;
  EXPECT_FALSE(cfg.violations().empty());
  cfg.duty = 1.0;
  EXPECT_FALSE(cfg.violations().empty());
  cfg.duty = 0.6;
  EXPECT_TRUE(cfg.violations().empty());
}

TEST(GaitConfig, ValidationCatchesNonDiagonalTrot) {
  GaitConfig cfg;
  cfg.phase_offsets = {0.0, 0.25, 0.5, 0.75};
  EXPECT_FALSE(cfg.violations().empty());
}

}  // namespace
}  // namespace quadrol

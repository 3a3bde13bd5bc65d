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

#include "quadrol/config.hpp"

#include <gtest/gtest.h>

namespace quadrol {
namespace {

TEST(ParseConfig, EmptyTextGivesDefaults) {
  const EpisodeConfig cfg = parse_config_text("");
  const EpisodeConfig defaults;
  EXPECT_EQ(serialize_config(cfg), serialize_config(defaults));
  EXPECT_TRUE(cfg.violations().empty());
}

TEST(ParseConfig, SerializeParseRoundTripIsExact) {
  EpisodeConfig cfg;
  cfg.duration = 7.25;
  cfg.seed = 42;
  cfg.robot.mu = 0.31;
  cfg.gait.v_des = Vec2(0.123456789123456789, -0.25);
  cfg.controller.mode = ControllerMode::kRql;
  cfg.controller.gamma = 0.97;
  cfg.critic.lambda = 2.5;
  const EpisodeConfig back = parse_config_text(serialize_config(cfg));
  EXPECT_EQ(serialize_config(back), serialize_config(cfg));
  EXPECT_EQ(back.gait.v_des.x(), cfg.gait.v_des.x());
}

TEST(ParseConfig, PartialOverridesKeepOtherDefaults) {
  const EpisodeConfig cfg =
      parse_config_text("[controller]\nhorizon = 7\n\n[robot]\nmu = 0.4\n");
  EXPECT_EQ(cfg.controller.horizon, 7);
  EXPECT_EQ(cfg.robot.mu, 0.4);
  EXPECT_EQ(cfg.duration, EpisodeConfig{}.duration);
}

TEST(ParseConfig, CommentsAndWhitespaceIgnored) {
  const EpisodeConfig cfg = parse_config_text(
      "# leading comment\n"
      "[episode]\n"
      "  duration =  3.5   # trailing comment\n"
      "\n");
  EXPECT_EQ(cfg.duration, 3.5);
}

TEST(ParseConfig, UnknownKeyReportsLineAndSection) {
  try {
    parse_config_text("[gait]\nbogus_key = 1\n", "test.cfg");
    FAIL() << "expected throw";
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("test.cfg:2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("bogus_key"), std::string::npos) << msg;
    EXPECT_NE(msg.find("[gait]"), std::string::npos) << msg;
  }
}

TEST(ParseConfig, UnknownSectionRejected) {
  EXPECT_THROW(parse_config_text("[nonsense]\nx = 1\n"), std::invalid_argument);
}

TEST(ParseConfig, KeyOutsideSectionRejected) {
  EXPECT_THROW(parse_config_text("duration = 3\n"), std::invalid_argument);
}

TEST(ParseConfig, MalformedLineRejected) {
  EXPECT_THROW(parse_config_text("[episode]\nduration 3\n"), std::invalid_argument);
}

TEST(ParseConfig, WrongVectorLengthRejected) {
  EXPECT_THROW(parse_config_text("[cost]\np_x = 1 2 3\n"), std::invalid_argument);
}

TEST(ParseConfig, BadNumberRejected) {
  EXPECT_THROW(parse_config_text("[episode]\nduration = fast\n"),
               std::invalid_argument);
}

TEST(ParseConfig, BadEnumRejected) {
  EXPECT_THROW(parse_config_text("[controller]\nmode = pid\n"),
               std::invalid_argument);
}

TEST(Violations, NegativeMuReported) {
  EpisodeConfig cfg = parse_config_text("[robot]\nmu = -0.1\n");
  const auto violations = cfg.violations();
  ASSERT_FALSE(violations.empty());
  bool found = false;
  for (const std::string& v : violations)
    if (v.find("mu") != std::string::npos) found = true;
  EXPECT_TRUE(found);
}

TEST(Violations, BadDutyReported) {
  EpisodeConfig cfg = parse_config_text("[gait]\nduty = 0.4\n");
  EXPECT_FALSE(cfg.violations().empty());
}

TEST(Violations, ZeroHorizonReported) {
  EpisodeConfig cfg = parse_config_text("[controller]\nhorizon = 0\n");
  EXPECT_FALSE(cfg.violations().empty());
}

TEST(Violations, ValidateThrowsWithJoinedMessage) {
  EpisodeConfig cfg;
  cfg.robot.mu = -1.0;
  cfg.controller.horizon = 0;
  try {
    cfg.validate();
    FAIL() << "expected throw";
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("mu"), std::string::npos);
    EXPECT_NE(msg.find("horizon"), std::string::npos);
  }
}

}  // namespace
}  // namespace quadrol

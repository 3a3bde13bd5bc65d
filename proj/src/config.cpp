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

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "quadrol/csv.hpp"

namespace quadrol {

namespace {

std::string trim(const std::string& s) {
  const size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<double> parse_numbers(const std::string& value, size_t expected,
                                  const std::string& context) {
  std::istringstream in(value);
  std::vector<double> numbers;
  std::string token;
  while (in >> token) numbers.push_back(parse_double(token));
  if (numbers.size() != expected) {
    throw std::invalid_argument(context + ": expected " + std::to_string(expected) +
                                " numbers, got " + std::to_string(numbers.size()));
  }
  return numbers;
}

double parse_scalar(const std::string& value, const std::string& context) {
  return parse_numbers(value, 1, context)[0];
}

long parse_integer(const std::string& value, const std::string& context) {
  const double d = parse_scalar(value, context);
  const long n = static_cast<long>(d);
  if (static_cast<double>(n) != d)
    throw std::invalid_argument(context + ": expected an integer, got '" + value + "'");
  return n;
}

bool parse_bool(const std::string& value, const std::string& context) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw std::invalid_argument(context + ": expected true or false, got '" + value + "'");
}

using Setter = std::function<void(EpisodeConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& schema() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto scalar = [](double EpisodeConfig::*field) {
      return [field](EpisodeConfig& c, const std::string& v, const std::string& ctx) {
        c.*field = parse_scalar(v, ctx);
      };
    };
    t["episode.duration"] = scalar(&EpisodeConfig::duration);
    t["episode.mass_scale"] = scalar(&EpisodeConfig::mass_scale);
    t["episode.noise_std"] = scalar(&EpisodeConfig::noise_std);
    t["episode.transient_skip_frac"] = scalar(&EpisodeConfig::transient_skip_frac);
    t["episode.substeps"] = [](EpisodeConfig& c, const std::string& v,
                               const std::string& ctx) {
      c.substeps = static_cast<int>(parse_integer(v, ctx));
    };
    t["episode.seed"] = [](EpisodeConfig& c, const std::string& v,
                           const std::string& ctx) {
      const long n = parse_integer(v, ctx);
      if (n < 0) throw std::invalid_argument(ctx + ": seed must be >= 0");
      c.seed = static_cast<std::uint64_t>(n);
    };

    t["robot.mass"] = [](EpisodeConfig& c, const std::string& v, const std::string& ctx) {
      c.robot.m = parse_scalar(v, ctx);
    };
    t["robot.inertia_diag"] = [](EpisodeConfig& c, const std::string& v,
                                 const std::string& ctx) {
      const auto n = parse_numbers(v, 3, ctx);
      c.robot.inertia_b = Vec3(n[0], n[1], n[2]).asDiagonal();
    };
    t["robot.gravity"] = [](EpisodeConfig& c, const std::string& v,
                            const std::string& ctx) {
      const auto n = parse_numbers(v, 3, ctx);
      c.robot.gravity = Vec3(n[0], n[1], n[2]);
    };
    t["robot.mu"] = [](EpisodeConfig& c, const std::string& v, const std::string& ctx) {
      c.robot.mu = parse_scalar(v, ctx);
    };
    t["robot.fz_max"] = [](EpisodeConfig& c, const std::string& v,
                           const std::string& ctx) {
      c.robot.fz_max = parse_scalar(v, ctx);
    };

    t["gait.mode"] = [](EpisodeConfig& c, const std::string& v, const std::string& ctx) {
      if (v == "trot") c.gait.mode = GaitMode::kTrot;
      else if (v == "stand") c.gait.mode = GaitMode::kStand;
      else throw std::invalid_argument(ctx + ": expected trot or stand, got '" + v + "'");
    };
    t["gait.period"] = [](EpisodeConfig& c, const std::string& v, const std::string& ctx) {
      c.gait.period = parse_scalar(v, ctx);
    };
    t["gait.duty"] = [](EpisodeConfig& c, const std::string& v, const std::string& ctx) {
      c.gait.duty = parse_scalar(v, ctx);
    };
    t["gait.phase_offsets"] = [](EpisodeConfig& c, const std::string& v,
                                 const std::string& ctx) {
      const auto n = parse_numbers(v, 4, ctx);
      for (int leg = 0; leg < kNumLegs; ++leg) c.gait.phase_offsets[leg] = n[leg];
    };
    const char* hip_keys[kNumLegs] = {"gait.hip_fl", "gait.hip_fr", "gait.hip_rl",
                                      "gait.hip_rr"};
    for (int leg = 0; leg < kNumLegs; ++leg) {
      t[hip_keys[leg]] = [leg](EpisodeConfig& c, const std::string& v,
                               const std::string& ctx) {
        const auto n = parse_numbers(v, 3, ctx);
        c.gait.hip_offsets[leg] = Vec3(n[0], n[1], n[2]);
      };
    }
    t["gait.body_height"] = [](EpisodeConfig& c, const std::string& v,
                               const std::string& ctx) {
      c.gait.body_height = parse_scalar(v, ctx);
    };
    t["gait.v_des"] = [](EpisodeConfig& c, const std::string& v,
                         const std::string& ctx) {
      const auto n = parse_numbers(v, 2, ctx);
      c.gait.v_des = Vec2(n[0], n[1]);
    };
    t["gait.yaw_rate_des"] = [](EpisodeConfig& c, const std::string& v,
                                const std::string& ctx) {
      c.gait.yaw_rate_des = parse_scalar(v, ctx);
    };

    t["cost.p_x"] = [](EpisodeConfig& c, const std::string& v, const std::string& ctx) {
      const auto n = parse_numbers(v, kStateDim, ctx);
      for (int i = 0; i < kStateDim; ++i) c.cost.p_x(i) = n[i];
    };
    t["cost.p_u"] = [](EpisodeConfig& c, const std::string& v, const std::string& ctx) {
      const auto n = parse_numbers(v, kActionDim, ctx);
      for (int i = 0; i < kActionDim; ++i) c.cost.p_u(i) = n[i];
    };

    t["controller.mode"] = [](EpisodeConfig& c, const std::string& v,
                              const std::string& ctx) {
      if (v == "mpc") c.controller.mode = ControllerMode::kMpc;
      else if (v == "rql") c.controller.mode = ControllerMode::kRql;
      else throw std::invalid_argument(ctx + ": expected mpc or rql, got '" + v + "'");
    };
    t["controller.horizon"] = [](EpisodeConfig& c, const std::string& v,
                                 const std::string& ctx) {
      c.controller.horizon = static_cast<int>(parse_integer(v, ctx));
    };
    t["controller.delta"] = [](EpisodeConfig& c, const std::string& v,
                               const std::string& ctx) {
      c.controller.delta = parse_scalar(v, ctx);
    };
    t["controller.gamma"] = [](EpisodeConfig& c, const std::string& v,
                               const std::string& ctx) {
      c.controller.gamma = parse_scalar(v, ctx);
    };
    t["controller.max_iters"] = [](EpisodeConfig& c, const std::string& v,
                                   const std::string& ctx) {
      c.controller.max_iters = static_cast<int>(parse_integer(v, ctx));
    };
    t["controller.tol"] = [](EpisodeConfig& c, const std::string& v,
                             const std::string& ctx) {
      c.controller.tol = parse_scalar(v, ctx);
    };
    t["controller.warm_start"] = [](EpisodeConfig& c, const std::string& v,
                                    const std::string& ctx) {
      c.controller.warm_start = parse_bool(v, ctx);
    };

    t["critic.buffer_size"] = [](EpisodeConfig& c, const std::string& v,
                                 const std::string& ctx) {
      c.critic.buffer_size = static_cast<int>(parse_integer(v, ctx));
    };
    t["critic.lambda"] = [](EpisodeConfig& c, const std::string& v,
                            const std::string& ctx) {
      c.critic.lambda = parse_scalar(v, ctx);
    };
    t["critic.w_init"] = [](EpisodeConfig& c, const std::string& v,
                            const std::string& ctx) {
      c.critic.w_init = parse_scalar(v, ctx);
    };
    t["critic.frozen"] = [](EpisodeConfig& c, const std::string& v,
                            const std::string& ctx) {
      c.critic.frozen = parse_bool(v, ctx);
    };
    return t;
  }();
  return table;
}

const std::vector<std::string>& known_sections() {
  static const std::vector<std::string> sections = {"episode", "robot", "gait",
                                                    "cost", "controller", "critic"};
  return sections;
}

}  // namespace

EpisodeConfig parse_config_text(const std::string& text,
                                const std::string& source_name) {
  EpisodeConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = source_name + ":" + std::to_string(line_no);
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument(where + ": malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      const auto& sections = known_sections();
      if (std::find(sections.begin(), sections.end(), section) == sections.end())
        throw std::invalid_argument(where + ": unknown section [" + section + "]");
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(where + ": expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw std::invalid_argument(where + ": key '" + key + "' outside any section");

    const std::string qualified = section + "." + key;
    const auto it = schema().find(qualified);
    if (it == schema().end())
      throw std::invalid_argument(where + ": unknown key '" + key + "' in section [" +
                                  section + "]");
    it->second(cfg, value, where + ": " + qualified);
  }
  return cfg;
}

EpisodeConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.filename().string());
}

std::string serialize_config(const EpisodeConfig& cfg) {
  std::ostringstream out;
  const auto vec = [](const auto& v, int n) {
    std::string s;
    for (int i = 0; i < n; ++i) {
      if (i > 0) s += ' ';
      s += format_double(v(i));
    }
    return s;
  };

  out << "[episode]\n";
  out << "duration = " << format_double(cfg.duration) << '\n';
  out << "substeps = " << cfg.substeps << '\n';
  out << "mass_scale = " << format_double(cfg.mass_scale) << '\n';
  out << "noise_std = " << format_double(cfg.noise_std) << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "transient_skip_frac = " << format_double(cfg.transient_skip_frac) << '\n';

  out << "\n[robot]\n";
  out << "mass = " << format_double(cfg.robot.m) << '\n';
  out << "inertia_diag = " << vec(cfg.robot.inertia_b.diagonal(), 3) << '\n';
  out << "gravity = " << vec(cfg.robot.gravity, 3) << '\n';
  out << "mu = " << format_double(cfg.robot.mu) << '\n';
  out << "fz_max = " << format_double(cfg.robot.fz_max) << '\n';

  out << "\n[gait]\n";
  out << "mode = " << (cfg.gait.mode == GaitMode::kTrot ? "trot" : "stand") << '\n';
  out << "period = " << format_double(cfg.gait.period) << '\n';
  out << "duty = " << format_double(cfg.gait.duty) << '\n';
  out << "phase_offsets =";
  for (int leg = 0; leg < kNumLegs; ++leg)
    out << ' ' << format_double(cfg.gait.phase_offsets[leg]);
  out << '\n';
  const char* hip_keys[kNumLegs] = {"hip_fl", "hip_fr", "hip_rl", "hip_rr"};
  for (int leg = 0; leg < kNumLegs; ++leg)
    out << hip_keys[leg] << " = " << vec(cfg.gait.hip_offsets[leg], 3) << '\n';
  out << "body_height = " << format_double(cfg.gait.body_height) << '\n';
  out << "v_des = " << vec(cfg.gait.v_des, 2) << '\n';
  out << "yaw_rate_des = " << format_double(cfg.gait.yaw_rate_des) << '\n';

  out << "\n[cost]\n";
  out << "p_x = " << vec(cfg.cost.p_x, kStateDim) << '\n';
  out << "p_u = " << vec(cfg.cost.p_u, kActionDim) << '\n';

  out << "\n[controller]\n";
  out << "mode = " << mode_name(cfg.controller.mode) << '\n';
  out << "horizon = " << cfg.controller.horizon << '\n';
  out << "delta = " << format_double(cfg.controller.delta) << '\n';
  out << "gamma = " << format_double(cfg.controller.gamma) << '\n';
  out << "max_iters = " << cfg.controller.max_iters << '\n';
  out << "tol = " << format_double(cfg.controller.tol) << '\n';
  out << "warm_start = " << (cfg.controller.warm_start ? "true" : "false") << '\n';

  out << "\n[critic]\n";
  out << "buffer_size = " << cfg.critic.buffer_size << '\n';
  out << "lambda = " << format_double(cfg.critic.lambda) << '\n';
  out << "w_init = " << format_double(cfg.critic.w_init) << '\n';
  out << "frozen = " << (cfg.critic.frozen ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace quadrol

// Copyright 2026 The Shepherd Curriculum Authors. All rights reserved.
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

#include "shepherd/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "shepherd/text.hpp"

namespace shepherd {

void ExperimentConfig::validate() const {
  if (runs < 1) throw Error("runs must be >= 1");
  if (heldout_episodes < 1) throw Error("heldout_episodes must be >= 1");
  if (heatmap_bins < 1) throw Error("heatmap.bins must be >= 1");
  evolution.validate();
  episode.validate();
  rewards.validate();
  if (!(scripted.shepherd_speed > 0.0)) throw Error("scripted.shepherd_speed must be > 0");
}

EnvKind env_for_skill(RewardMode skill) {
  switch (skill) {
    case RewardMode::kCollect: return EnvKind::kCollect;
    case RewardMode::kDrive: return EnvKind::kDrive;
    default: return EnvKind::kFull;
  }
}

void set_skill(ExperimentConfig& config, RewardMode skill) {
  config.skill = skill;
  if (!config.env_explicit) config.episode.env = env_for_skill(skill);
}

ExperimentConfig desk_preset() {
  ExperimentConfig c;
  c.runs = 10;
  c.evolution.pop_size = 30;
  c.evolution.generations = 100;
  c.evolution.parent_pool_target = 8;
  c.episode.world.n = 15;
  c.episode.max_steps = 1500;
  c.episode.eval_episodes = 3;
  set_skill(c, RewardMode::kCombined);
  return c;
}

ExperimentConfig full_preset() {
  ExperimentConfig c;
  c.runs = 10;
  c.evolution.pop_size = 50;
  c.evolution.generations = 250;
  c.evolution.parent_pool_target = 8;
  c.episode.world.n = 30;
  c.episode.max_steps = 2000;
  c.episode.eval_episodes = 3;
  set_skill(c, RewardMode::kCombined);
  return c;
}

ExperimentConfig preset_by_name(const std::string& name) {
  if (name == "desk") return desk_preset();
  if (name == "full") return full_preset();
  throw Error("unknown preset '" + name + "'");
}

namespace {

struct Key {
  const char* name;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, std::string_view)> set;
};

template <typename Field>
Key real_key(const char* name, Field field) {
  return {name,
          [field](const ExperimentConfig& c) {
            ExperimentConfig copy = c;
            return format_double(field(copy));
          },
          [field](ExperimentConfig& c, std::string_view v) { field(c) = parse_double(v); }};
}

template <typename Field>
Key count_key(const char* name, Field field) {
  return {name,
          [field](const ExperimentConfig& c) {
            ExperimentConfig copy = c;
            return std::to_string(field(copy));
          },
          [field](ExperimentConfig& c, std::string_view v) {
            field(c) = static_cast<std::remove_reference_t<decltype(field(c))>>(parse_u64(v));
          }};
}

bool parse_bool(std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw Error("not a boolean: '" + std::string(v) + "'");
}

const std::vector<Key>& keys() {
  using C = ExperimentConfig;
  static const std::vector<Key> table = {
      {"skill", [](const C& c) { return std::string(to_string(c.skill)); },
       [](C& c, std::string_view v) { set_skill(c, reward_mode_from_string(std::string(v))); }},
      count_key("runs", [](C& c) -> auto& { return c.runs; }),
      count_key("master_seed", [](C& c) -> auto& { return c.master_seed; }),
      count_key("heldout_episodes", [](C& c) -> auto& { return c.heldout_episodes; }),
      count_key("heatmap.bins", [](C& c) -> auto& { return c.heatmap_bins; }),
      count_key("checkpoint_every", [](C& c) -> auto& { return c.checkpoint_every; }),

      count_key("evolution.pop_size", [](C& c) -> auto& { return c.evolution.pop_size; }),
      count_key("evolution.generations", [](C& c) -> auto& { return c.evolution.generations; }),
      count_key("evolution.parent_pool_target",
                [](C& c) -> auto& { return c.evolution.parent_pool_target; }),
      count_key("evolution.parent_pool_min",
                [](C& c) -> auto& { return c.evolution.parent_pool_min; }),
      real_key("evolution.diff_scale", [](C& c) -> auto& { return c.evolution.diff_scale; }),
      real_key("evolution.mut_sigma", [](C& c) -> auto& { return c.evolution.mut_sigma; }),
      count_key("evolution.threads", [](C& c) -> auto& { return c.evolution.threads; }),

      {"episode.env", [](const C& c) { return std::string(to_string(c.episode.env)); },
       [](C& c, std::string_view v) {
         c.episode.env = env_kind_from_string(std::string(v));
         c.env_explicit = true;
       }},
      count_key("episode.max_steps", [](C& c) -> auto& { return c.episode.max_steps; }),
      real_key("episode.shepherd_speed", [](C& c) -> auto& { return c.episode.shepherd_speed; }),
      count_key("episode.eval_episodes", [](C& c) -> auto& { return c.episode.eval_episodes; }),
      {"episode.stop_on_success",
       [](const C& c) { return std::string(c.episode.stop_on_success ? "true" : "false"); },
       [](C& c, std::string_view v) { c.episode.stop_on_success = parse_bool(v); }},

      count_key("world.n", [](C& c) -> auto& { return c.episode.world.n; }),
      real_key("world.l", [](C& c) -> auto& { return c.episode.world.l; }),
      real_key("world.r_a", [](C& c) -> auto& { return c.episode.world.r_a; }),
      real_key("world.r_s", [](C& c) -> auto& { return c.episode.world.r_s; }),
      real_key("world.goal_radius", [](C& c) -> auto& { return c.episode.world.goal_radius; }),

      real_key("sheep.rho_a", [](C& c) -> auto& { return c.episode.sheep.rho_a; }),
      real_key("sheep.c", [](C& c) -> auto& { return c.episode.sheep.c; }),
      real_key("sheep.rho_s", [](C& c) -> auto& { return c.episode.sheep.rho_s; }),
      real_key("sheep.h", [](C& c) -> auto& { return c.episode.sheep.h; }),
      real_key("sheep.e", [](C& c) -> auto& { return c.episode.sheep.e; }),
      real_key("sheep.delta", [](C& c) -> auto& { return c.episode.sheep.delta; }),
      count_key("sheep.n_neighbors", [](C& c) -> auto& { return c.episode.sheep.n_neighbors; }),
      real_key("sheep.p_graze", [](C& c) -> auto& { return c.episode.sheep.p_graze; }),
      {"sheep.graze", [](const C& c) { return std::string(c.episode.sheep.graze ? "true" : "false"); },
       [](C& c, std::string_view v) { c.episode.sheep.graze = parse_bool(v); }},

      real_key("reward.c0", [](C& c) -> auto& { return c.rewards.c0; }),
      real_key("reward.d0", [](C& c) -> auto& { return c.rewards.d0; }),
      real_key("reward.u0", [](C& c) -> auto& { return c.rewards.u0; }),
      real_key("reward.cf0", [](C& c) -> auto& { return c.rewards.cf0; }),
      real_key("reward.df0", [](C& c) -> auto& { return c.rewards.df0; }),
      real_key("reward.dtheta", [](C& c) -> auto& { return c.rewards.dtheta; }),
      real_key("reward.delta", [](C& c) -> auto& { return c.rewards.delta; }),
      real_key("reward.delta_psi", [](C& c) -> auto& { return c.rewards.delta_psi; }),
      real_key("reward.tau", [](C& c) -> auto& { return c.rewards.tau; }),
      real_key("reward.beta", [](C& c) -> auto& { return c.rewards.beta; }),
      {"reward.combined_pareto",
       [](const C& c) { return std::string(c.rewards.combined_pareto ? "true" : "false"); },
       [](C& c, std::string_view v) { c.rewards.combined_pareto = parse_bool(v); }},

      real_key("scripted.collect_offset", [](C& c) -> auto& { return c.scripted.collect_offset; }),
      real_key("scripted.drive_offset", [](C& c) -> auto& { return c.scripted.drive_offset; }),
      real_key("scripted.standoff", [](C& c) -> auto& { return c.scripted.standoff; }),
      real_key("scripted.transit_radius", [](C& c) -> auto& { return c.scripted.transit_radius; }),
      real_key("scripted.transit_speed_cap",
               [](C& c) -> auto& { return c.scripted.transit_speed_cap; }),
  };
  return table;
}

}  // namespace

void apply_config_text(ExperimentConfig& config, const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const auto where = "config line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw Error(where + "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      if (key == "preset") {
        config = preset_by_name(std::string(value));
        continue;
      }
      bool found = false;
      for (const auto& k : keys()) {
        if (key == k.name) {
          k.set(config, value);
          found = true;
          break;
        }
      }
      if (!found) throw Error("unknown key '" + std::string(key) + "'");
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
  // The scripted agent moves at the shepherd's speed.
  config.scripted.shepherd_speed = config.episode.shepherd_speed;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(base, ss.str());
  return base;
}

std::string echo_config(const ExperimentConfig& config) {
  std::ostringstream out;
  for (const auto& k : keys()) out << k.name << " = " << k.get(config) << '\n';
  return out.str();
}

}  // namespace shepherd

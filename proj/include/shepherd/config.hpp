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

#pragma once

/// @file config.hpp
/// @brief Experiment configuration and its flat `key = value` file format.
///
/// Keys carry a dotted section prefix (`sheep.rho_a = 2.0`); `#` starts a
/// comment. Unknown keys are an error. `echo_config` writes every key, so an
/// echoed file reproduces the configuration exactly.

#include <cstddef>
#include <cstdint>
#include <string>

#include "shepherd/episode.hpp"
#include "shepherd/evolution.hpp"
#include "shepherd/reward.hpp"
#include "shepherd/scripted.hpp"

namespace shepherd {

struct ExperimentConfig {
  RewardMode skill = RewardMode::kCombined;
  std::size_t runs = 10;
  EvolutionConfig evolution;
  EpisodeConfig episode;
  RewardParams rewards;
  ScriptedParams scripted;
  std::uint64_t master_seed = 1;
  std::string output_dir;
  std::size_t heldout_episodes = 5;
  std::size_t heatmap_bins = 30;
  std::size_t checkpoint_every = 25;
  bool env_explicit = false;  // episode.env given; otherwise derived from the skill

  void validate() const;
};

/// Starting layout that trains a skill: collect -> collect, drive -> drive,
/// combined and baseline -> full.
EnvKind env_for_skill(RewardMode skill);

/// Desk scale: N=15, pop 30, 100 generations, 10 runs, E=3, T=1500.
ExperimentConfig desk_preset();
/// Reported protocol: pop 50, 250 generations, 8 parents, 10 runs, T=2000.
ExperimentConfig full_preset();
ExperimentConfig preset_by_name(const std::string& name);

/// Applies `key = value` lines on top of `config`. Throws Error naming the
/// offending line. A `preset = desk|full` line resets everything first.
void apply_config_text(ExperimentConfig& config, const std::string& text);
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = desk_preset());

/// Sets the skill and, unless episode.env was given explicitly, its layout.
void set_skill(ExperimentConfig& config, RewardMode skill);

std::string echo_config(const ExperimentConfig& config);

}  // namespace shepherd

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

/// @file episode.hpp
/// @brief One shepherding episode: environment layout, the controller ->
/// shepherd -> herd -> reward loop, success detection and trace capture.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "shepherd/controller.hpp"
#include "shepherd/reward.hpp"
#include "shepherd/sheep.hpp"
#include "shepherd/trace.hpp"

namespace shepherd {

/// Starting layouts. Collect and Full scatter the herd over the central square;
/// Drive starts with a gathered herd between the shepherd and the goal.
enum class EnvKind { kCollect, kDrive, kFull };

const char* to_string(EnvKind env);
EnvKind env_kind_from_string(const std::string& s);

struct EpisodeConfig {
  EnvKind env = EnvKind::kFull;
  std::uint64_t max_steps = 2000;   // T
  double shepherd_speed = 1.5;      // delta_s
  WorldParams world;
  SheepParams sheep;
  std::size_t eval_episodes = 3;    // E
  /// End the episode at the first step the success predicate holds. When
  /// false the episode always runs T steps and success records whether the
  /// predicate held at any step.
  bool stop_on_success = true;

  void validate() const;
};

struct EpisodeResult {
  Objectives objectives;
  bool success = false;
  std::uint64_t steps_used = 0;
  std::optional<EpisodeTrace> trace;
  std::string diagnostic;  // set when the episode was aborted
};

using Controller = std::function<ControlOutput(const WorldState&)>;

WorldState init_world(const EpisodeConfig& config, std::uint64_t seed);

/// Moves the shepherd speed * delta_s along `direction`, clamped to the paddock;
/// last_move records the displacement actually taken.
WorldState apply_action(const WorldState& world, const ControlOutput& action, double delta_s,
                        double l);

/// Collect: herd gathered. Drive, Combined, Baseline: herd gathered and its
/// centre within goal_radius of the goal.
bool success_predicate(RewardMode mode, const Landmarks& lm, const WorldParams& world);

/// Runs until the success predicate holds or max_steps elapse. A non-finite
/// controller output aborts the episode with the worst representable objectives.
EpisodeResult run_episode(const Controller& controller, const EpisodeConfig& config,
                          RewardMode mode, const RewardParams& params, std::uint64_t seed,
                          bool capture_trace = false);

Controller genome_controller(const Genome& genome, const WorldParams& world);
Controller scripted_controller(const WorldParams& world, const ScriptedParams& scripted);

/// Mean objectives of `genome` over the given episode seeds; success when a
/// strict majority of the episodes succeed.
Objectives evaluate_genome(const Genome& genome, const EpisodeConfig& config, RewardMode mode,
                           const RewardParams& params, std::span<const std::uint64_t> seeds);

}  // namespace shepherd

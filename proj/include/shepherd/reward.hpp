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

/// @file reward.hpp
/// @brief Step rewards for the collecting and driving skills, the intuitive
/// baseline reward, and episode-level objective vectors.
///
/// Every reward is a pure function of a (previous, current) landmark pair.
///
/// Direction conventions used by the alignment terms:
///   - shepherd heading: its last displacement
///   - P_c / P_d direction: from the shepherd to the point
///   - separated sheep heading: that sheep's last displacement
///   - collect: direction from the separated sheep to the GCM
///   - drive: GCM heading is its last displacement, goal direction is GCM -> goal
/// A direction that is undefined (zero vector) skips its alignment term.

#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "shepherd/geometry.hpp"
#include "shepherd/trace.hpp"

namespace shepherd {

struct RewardParams {
  double c0 = 1.0;    // collect phase award
  double d0 = 1.0;    // drive phase award
  double u0 = 5.0;    // disturbance punishment
  double cf0 = 3.0;   // force on the separated sheep
  double df0 = 3.0;   // force on the herd
  double dtheta = std::numbers::pi / 4.0;
  double delta = 4.0;       // arrival tolerance, 2 * r_a
  double delta_psi = 6.0;   // stand-off distance, 3 * r_a
  double tau = 0.0;         // baseline starting value
  double beta = 10.0;       // baseline per-metric increment
  bool combined_pareto = true;  // combined skill: two objectives, or their sum when false

  void validate() const;
};

enum class RewardMode { kCollect, kDrive, kCombined, kBaseline };

const char* to_string(RewardMode mode);
RewardMode reward_mode_from_string(const std::string& s);

struct StepPair {
  Landmarks prev;
  Landmarks curr;
};

StepPair make_step_pair(const WorldState& prev, const WorldState& curr);

struct Objectives {
  std::vector<double> values;
  bool success = false;

  /// Sum of the components; the scalar used for reporting and truncation.
  double scalar() const;
};

/// Landmark points derived from a row: collecting point (falls back to the
/// GCM when sigma coincides with it) and driving point.
Vec2 collect_target(const Landmarks& lm, const WorldParams& world);
Vec2 drive_target(const Landmarks& lm, const WorldParams& world);

/// Alignment award: dtheta - diff when diff <= dtheta, else -diff.
double alignment_term(Vec2 heading, Vec2 wanted, double dtheta);

double collect_reward_step(const StepPair& pair, const RewardParams& params,
                           const WorldParams& world);
double drive_reward_step(const StepPair& pair, const RewardParams& params,
                         const WorldParams& world);
double baseline_step(const StepPair& pair, const RewardParams& params,
                     const WorldParams& world);

/// Starting value plus accumulated baseline steps minus four times the
/// terminal distances (shepherd-GCM, shepherd-goal, furthest sheep spread).
double baseline_fitness(const EpisodeTrace& trace, const RewardParams& params,
                        const WorldParams& world);

/// The reward-mode value recorded for one step (Combined: collect + drive).
double step_reward(RewardMode mode, const StepPair& pair, const RewardParams& params,
                   const WorldParams& world);

/// Objective vector of a whole trace: one component for Collect, Drive and
/// Baseline, [collect, drive] for Combined. `success` is left false.
Objectives episode_objectives(const EpisodeTrace& trace, RewardMode mode,
                              const RewardParams& params, const WorldParams& world);

/// Incremental form of episode_objectives used by the episode loop.
class ObjectiveAccumulator {
 public:
  ObjectiveAccumulator(RewardMode mode, const RewardParams& params, const WorldParams& world);

  /// Adds one step and returns the value step_reward() reports for it.
  double add(const StepPair& pair);
  Objectives finish(const Landmarks& final_state) const;

 private:
  RewardMode mode_;
  RewardParams params_;
  WorldParams world_;
  double collect_ = 0.0;
  double drive_ = 0.0;
  double baseline_ = 0.0;
};

}  // namespace shepherd

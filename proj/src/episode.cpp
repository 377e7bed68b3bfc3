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

#include "shepherd/episode.hpp"

#include <cmath>
#include <limits>

namespace shepherd {

namespace {
constexpr std::uint64_t kDynamicsStream = 0xd1;
}

const char* to_string(EnvKind env) {
  switch (env) {
    case EnvKind::kCollect: return "collect";
    case EnvKind::kDrive: return "drive";
    case EnvKind::kFull: return "full";
  }
  return "?";
}

EnvKind env_kind_from_string(const std::string& s) {
  if (s == "collect") return EnvKind::kCollect;
  if (s == "drive") return EnvKind::kDrive;
  if (s == "full") return EnvKind::kFull;
  throw Error("unknown environment '" + s + "'");
}

void EpisodeConfig::validate() const {
  world.validate();
  sheep.validate(world.n);
  if (max_steps < 1) throw Error("episode.max_steps must be >= 1");
  if (!(shepherd_speed > sheep.delta)) throw Error("episode.shepherd_speed must exceed sheep.delta");
  if (eval_episodes < 1) throw Error("episode.eval_episodes must be >= 1");
}

WorldState init_world(const EpisodeConfig& config, std::uint64_t seed) {
  const auto& wp = config.world;
  const double l = wp.l;
  Rng rng(seed);
  WorldState world;
  world.sheep.resize(wp.n);
  world.goal = {0.9 * l, 0.9 * l};

  if (config.env == EnvKind::kDrive) {
    const double radius = herd_threshold(wp.n, wp.r_a) / 2.0;
    const Vec2 centre{0.3 * l, 0.3 * l};
    for (auto& s : world.sheep) {
      const double r = radius * std::sqrt(rng.uniform());
      const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
      s.position = clamp_to_paddock(centre + Vec2{r * std::cos(a), r * std::sin(a)}, l);
    }
    world.shepherd.position = {0.1 * l, 0.1 * l};
  } else {
    for (auto& s : world.sheep) {
      const double x = rng.uniform(0.25 * l, 0.75 * l);
      const double y = rng.uniform(0.25 * l, 0.75 * l);
      s.position = {x, y};
    }
    world.shepherd.position = {0.05 * l, 0.05 * l};
  }
  for (auto& s : world.sheep) s.heading = rng.direction();
  return world;
}

WorldState apply_action(const WorldState& world, const ControlOutput& action, double delta_s,
                        double l) {
  WorldState next = world;
  const Vec2 old = world.shepherd.position;
  const double step = action.speed * delta_s;
  const Vec2 moved = clamp_to_paddock(
      old + Vec2{step * std::cos(action.direction), step * std::sin(action.direction)}, l);
  next.shepherd.position = moved;
  next.shepherd.last_move = moved - old;
  return next;
}

bool success_predicate(RewardMode mode, const Landmarks& lm, const WorldParams& world) {
  const bool gathered = !(lm.furthest_dist > herd_threshold(world.n, world.r_a));
  if (mode == RewardMode::kCollect) return gathered;
  return gathered && distance(lm.phi, lm.goal) <= world.goal_radius;
}

namespace {

ShepherdMode mode_of(const Landmarks& lm, const WorldParams& world) {
  return lm.furthest_dist > herd_threshold(world.n, world.r_a) ? ShepherdMode::kCollect
                                                              : ShepherdMode::kDrive;
}

std::size_t objective_count(RewardMode mode, const RewardParams& params) {
  return mode == RewardMode::kCombined && params.combined_pareto ? 2 : 1;
}

}  // namespace

EpisodeResult run_episode(const Controller& controller, const EpisodeConfig& config,
                          RewardMode mode, const RewardParams& params, std::uint64_t seed,
                          bool capture_trace) {
  const auto& wp = config.world;
  WorldState world = init_world(config, seed);
  Rng rng(derive_seed(seed, {kDynamicsStream}));
  ObjectiveAccumulator acc(mode, params, wp);

  EpisodeResult result;
  EpisodeTrace trace;
  if (capture_trace) trace.initial_sheep = world.positions();

  Landmarks prev = make_landmarks(world, nullptr);
  if (capture_trace) trace.rows.push_back({prev, mode_of(prev, wp), 0.0});
  bool success = success_predicate(mode, prev, wp);

  std::uint64_t steps = 0;
  while (!(success && config.stop_on_success) && steps < config.max_steps) {
    const ControlOutput action = controller(world);
    if (!std::isfinite(action.direction) || !std::isfinite(action.speed)) {
      result.diagnostic = "non-finite controller output at step " + std::to_string(steps);
      result.objectives.values.assign(objective_count(mode, params),
                                      std::numeric_limits<double>::lowest());
      result.steps_used = steps;
      if (capture_trace) {
        trace.final_sheep = world.positions();
        result.trace = std::move(trace);
      }
      return result;
    }
    WorldState moved = apply_action(world, action, config.shepherd_speed, wp.l);
    WorldState next = sheep_step(moved, config.sheep, wp, rng);
    next.t = world.t + 1;

    const Landmarks curr = make_landmarks(next, &world);
    const double r = acc.add({prev, curr});
    if (capture_trace) trace.rows.push_back({curr, mode_of(curr, wp), r});

    ++steps;
    success = success || success_predicate(mode, curr, wp);
    world = std::move(next);
    prev = curr;
  }

  result.objectives = acc.finish(prev);
  result.objectives.success = success;
  result.success = success;
  result.steps_used = steps;
  if (capture_trace) {
    trace.final_sheep = world.positions();
    result.trace = std::move(trace);
  }
  return result;
}

Controller genome_controller(const Genome& genome, const WorldParams& world) {
  return [&genome, world](const WorldState& state) {
    return forward(genome, encode_inputs(state, world));
  };
}

Controller scripted_controller(const WorldParams& world, const ScriptedParams& scripted) {
  return [world, scripted](const WorldState& state) {
    return scripted_action(state, world, scripted);
  };
}

Objectives evaluate_genome(const Genome& genome, const EpisodeConfig& config, RewardMode mode,
                           const RewardParams& params, std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw Error("no evaluation seeds");
  const auto controller = genome_controller(genome, config.world);
  Objectives mean;
  std::size_t wins = 0;
  const double inv = 1.0 / static_cast<double>(seeds.size());
  for (const auto seed : seeds) {
    const auto res = run_episode(controller, config, mode, params, seed);
    if (mean.values.empty()) mean.values.assign(res.objectives.values.size(), 0.0);
    for (std::size_t k = 0; k < mean.values.size(); ++k) {
      mean.values[k] += res.objectives.values[k] * inv;
    }
    if (res.success) ++wins;
  }
  mean.success = 2 * wins > seeds.size();
  return mean;
}

}  // namespace shepherd

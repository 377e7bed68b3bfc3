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

#include "shepherd/reward.hpp"

#include <cmath>
#include <numeric>

#include "shepherd/scripted.hpp"

namespace shepherd {

namespace {

constexpr double kUnchanged = 1e-9;

bool defined(Vec2 v) { return v.x != 0.0 || v.y != 0.0; }

// Reward a decrease (gain * drop), punish an increase (penalty * rise).
double approach_term(double before, double after, double gain, double penalty) {
  return after < before ? gain * (before - after) : -penalty * (after - before);
}

double signed_metric(double before, double after, double beta) {
  const double change = after - before;
  if (change < -kUnchanged) return beta;
  if (change > kUnchanged) return -beta;
  return 0.0;
}

}  // namespace

void RewardParams::validate() const {
  if (!(dtheta > 0.0 && dtheta <= std::numbers::pi)) throw Error("reward.dtheta must be in (0, pi]");
  if (!(delta > 0.0)) throw Error("reward.delta must be > 0");
  if (!(delta_psi > 0.0)) throw Error("reward.delta_psi must be > 0");
  for (double m : {c0, d0, u0, cf0, df0}) {
    if (!(m >= 0.0)) throw Error("reward magnitudes must be >= 0");
  }
}

const char* to_string(RewardMode mode) {
  switch (mode) {
    case RewardMode::kCollect: return "collect";
    case RewardMode::kDrive: return "drive";
    case RewardMode::kCombined: return "combined";
    case RewardMode::kBaseline: return "baseline";
  }
  return "?";
}

RewardMode reward_mode_from_string(const std::string& s) {
  if (s == "collect") return RewardMode::kCollect;
  if (s == "drive") return RewardMode::kDrive;
  if (s == "combined") return RewardMode::kCombined;
  if (s == "baseline") return RewardMode::kBaseline;
  throw Error("unknown skill '" + s + "'");
}

StepPair make_step_pair(const WorldState& prev, const WorldState& curr) {
  return {make_landmarks(prev, nullptr), make_landmarks(curr, &prev)};
}

double Objectives::scalar() const { return std::accumulate(values.begin(), values.end(), 0.0); }

Vec2 collect_target(const Landmarks& lm, const WorldParams& world) {
  if (lm.sigma == lm.phi) return lm.phi;
  return collecting_point(lm.phi, lm.sigma, world.r_a);
}

Vec2 drive_target(const Landmarks& lm, const WorldParams& world) {
  return driving_point(lm.phi, lm.goal, world.r_a, world.n);
}

double alignment_term(Vec2 heading, Vec2 wanted, double dtheta) {
  if (!defined(heading) || !defined(wanted)) return 0.0;
  const double diff = angular_diff(heading.angle(), wanted.angle());
  return diff <= dtheta ? dtheta - diff : -diff;
}

double collect_reward_step(const StepPair& pair, const RewardParams& params,
                           const WorldParams& world) {
  const auto& prev = pair.prev;
  const auto& curr = pair.curr;
  const bool outside = curr.furthest_dist > herd_threshold(world.n, world.r_a);
  const Vec2 pc_prev = collect_target(prev, world);
  const Vec2 pc = collect_target(curr, world);
  const double to_pc = distance(curr.psi, pc);

  double reward = 0.0;
  if (outside) reward += params.c0;
  reward += alignment_term(curr.psi_move, pc - curr.psi, params.dtheta);
  reward += approach_term(distance(prev.psi, pc_prev), to_pc, 1.0, 2.0);
  if (to_pc > params.delta_psi && curr.nearest_dist < world.r_s) reward -= params.u0;
  if (to_pc <= params.delta) reward += params.delta - to_pc;

  // Separated-sheep terms exist only while a sheep is outside the herd.
  if (outside) {
    reward += alignment_term(curr.sigma - curr.sigma_prev, curr.phi - curr.sigma, params.dtheta);
    reward += approach_term(prev.furthest_dist, curr.furthest_dist, 2.0, 4.0);
    if (distance(curr.psi, curr.sigma) < world.r_s) reward += params.cf0;
  }
  return reward;
}

double drive_reward_step(const StepPair& pair, const RewardParams& params,
                         const WorldParams& world) {
  const auto& prev = pair.prev;
  const auto& curr = pair.curr;
  const bool inside = !(curr.furthest_dist > herd_threshold(world.n, world.r_a));
  const Vec2 pd_prev = drive_target(prev, world);
  const Vec2 pd = drive_target(curr, world);
  const double to_pd = distance(curr.psi, pd);
  const bool force_on_herd = curr.nearest_dist < world.r_s;

  double reward = 0.0;
  if (inside) reward += params.d0;
  reward += alignment_term(curr.psi_move, pd - curr.psi, params.dtheta);
  reward += approach_term(distance(prev.psi, pd_prev), to_pd, 1.0, 2.0);
  if (to_pd > params.delta_psi && force_on_herd) reward -= params.u0;
  if (to_pd <= params.delta) reward += params.delta - to_pd;

  reward += alignment_term(curr.phi - prev.phi, curr.goal - curr.phi, params.dtheta);
  reward += approach_term(distance(prev.phi, prev.goal), distance(curr.phi, curr.goal), 2.0, 4.0);
  if (force_on_herd) reward += params.df0;
  return reward;
}

double baseline_step(const StepPair& pair, const RewardParams& params,
                     const WorldParams& world) {
  const auto& prev = pair.prev;
  const auto& curr = pair.curr;
  double reward = 0.0;
  reward += signed_metric(distance(prev.psi, drive_target(prev, world)),
                          distance(curr.psi, drive_target(curr, world)), params.beta);
  reward += signed_metric(distance(prev.psi, prev.phi), distance(curr.psi, curr.phi), params.beta);
  reward += signed_metric(prev.mean_spread, curr.mean_spread, params.beta);
  reward += signed_metric(distance(prev.phi, prev.goal), distance(curr.phi, curr.goal),
                          params.beta);
  return reward;
}

namespace {

double terminal_penalty(const Landmarks& lm) {
  return 4.0 * (distance(lm.psi, lm.phi) + distance(lm.psi, lm.goal) + lm.furthest_dist);
}

}  // namespace

double baseline_fitness(const EpisodeTrace& trace, const RewardParams& params,
                        const WorldParams& world) {
  return episode_objectives(trace, RewardMode::kBaseline, params, world).values.at(0);
}

double step_reward(RewardMode mode, const StepPair& pair, const RewardParams& params,
                   const WorldParams& world) {
  switch (mode) {
    case RewardMode::kCollect: return collect_reward_step(pair, params, world);
    case RewardMode::kDrive: return drive_reward_step(pair, params, world);
    case RewardMode::kCombined:
      return collect_reward_step(pair, params, world) + drive_reward_step(pair, params, world);
    case RewardMode::kBaseline: return baseline_step(pair, params, world);
  }
  return 0.0;
}

Objectives episode_objectives(const EpisodeTrace& trace, RewardMode mode,
                              const RewardParams& params, const WorldParams& world) {
  if (trace.rows.empty()) throw Error("empty trace");
  ObjectiveAccumulator acc(mode, params, world);
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    acc.add({trace.rows[k - 1].lm, trace.rows[k].lm});
  }
  return acc.finish(trace.rows.back().lm);
}

ObjectiveAccumulator::ObjectiveAccumulator(RewardMode mode, const RewardParams& params,
                                           const WorldParams& world)
    : mode_(mode), params_(params), world_(world) {}

double ObjectiveAccumulator::add(const StepPair& pair) {
  switch (mode_) {
    case RewardMode::kCollect: {
      const double r = collect_reward_step(pair, params_, world_);
      collect_ += r;
      return r;
    }
    case RewardMode::kDrive: {
      const double r = drive_reward_step(pair, params_, world_);
      drive_ += r;
      return r;
    }
    case RewardMode::kCombined: {
      const double c = collect_reward_step(pair, params_, world_);
      const double d = drive_reward_step(pair, params_, world_);
      collect_ += c;
      drive_ += d;
      return c + d;
    }
    case RewardMode::kBaseline: {
      const double r = baseline_step(pair, params_, world_);
      baseline_ += r;
      return r;
    }
  }
  return 0.0;
}

Objectives ObjectiveAccumulator::finish(const Landmarks& final_state) const {
  switch (mode_) {
    case RewardMode::kCollect: return {{collect_}, false};
    case RewardMode::kDrive: return {{drive_}, false};
    case RewardMode::kCombined:
      if (!params_.combined_pareto) return {{collect_ + drive_}, false};
      return {{collect_, drive_}, false};
    case RewardMode::kBaseline:
      return {{params_.tau + baseline_ - terminal_penalty(final_state)}, false};
  }
  return {};
}

}  // namespace shepherd

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

#include "shepherd/scripted.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace shepherd {

const char* to_string(ShepherdMode mode) {
  return mode == ShepherdMode::kCollect ? "collect" : "drive";
}

ShepherdMode mode_select(const WorldState& world, const WorldParams& params) {
  const auto pos = world.positions();
  const Vec2 phi = gcm(pos);
  const auto far = furthest_from(pos, phi);
  return far.distance > herd_threshold(pos.size(), params.r_a) ? ShepherdMode::kCollect
                                                               : ShepherdMode::kDrive;
}

Vec2 collecting_point(Vec2 phi, Vec2 sigma, double offset) {
  if (sigma == phi) throw Error("sheep coincides with GCM");
  return sigma + offset * unit(sigma - phi);
}

Vec2 driving_point(Vec2 phi, Vec2 goal, double r_a, std::size_t n) {
  if (phi == goal) return phi;
  return phi + r_a * std::sqrt(static_cast<double>(n)) * unit(phi - goal);
}

Vec2 scripted_target(const WorldState& world, const WorldParams& params,
                     const ScriptedParams& scripted) {
  const auto pos = world.positions();
  const Vec2 phi = gcm(pos);
  const auto far = furthest_from(pos, phi);
  const bool collect = far.distance > herd_threshold(pos.size(), params.r_a);
  if (collect && pos[far.index] != phi) {
    return collecting_point(phi, pos[far.index], scripted.collect_offset * params.r_a);
  }
  return driving_point(phi, world.goal, scripted.drive_offset * params.r_a, pos.size());
}

Action scripted_action(const WorldState& world, const WorldParams& params,
                       const ScriptedParams& scripted) {
  const Vec2 psi = world.shepherd.position;
  const Vec2 to_target = scripted_target(world, params, scripted) - psi;
  const double dist = to_target.norm();
  if (!(dist > 0.0)) return {0.0, 0.0};

  Action action{to_target.angle(), std::min(1.0, dist / scripted.shepherd_speed)};
  if (dist > scripted.standoff) {
    const double near = scripted.transit_radius * params.r_a;
    const bool close_to_sheep = std::any_of(world.sheep.begin(), world.sheep.end(),
        [&](const SheepState& s) { return distance(s.position, psi) < near; });
    if (close_to_sheep) action.speed = std::min(action.speed, scripted.transit_speed_cap);
  }
  return action;
}

}  // namespace shepherd

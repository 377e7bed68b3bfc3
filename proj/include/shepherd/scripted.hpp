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

/// @file scripted.hpp
/// @brief Rule-based shepherd: collect/drive switching and its target points.
///
/// The same landmarks (collecting point P_c, driving point P_d) feed the
/// reward functions, so they are kept here as standalone pure functions.

#include <cstddef>

#include "shepherd/geometry.hpp"

namespace shepherd {

enum class ShepherdMode { kCollect, kDrive };

const char* to_string(ShepherdMode mode);

/// Tunables of the scripted agent and of the landmark offsets.
struct ScriptedParams {
  double collect_offset = 1.0;   // P_c sits collect_offset * r_a behind sigma
  double drive_offset = 1.0;     // P_d sits drive_offset * r_a * sqrt(N) behind the GCM
  double shepherd_speed = 1.5;   // delta_s
  double standoff = 6.0;         // far-from-target distance for the transit cap
  double transit_radius = 3.0;   // in units of r_a
  double transit_speed_cap = 0.3;
};

/// Collect iff the furthest sheep is strictly beyond herd_threshold(N, r_a).
ShepherdMode mode_select(const WorldState& world, const WorldParams& params);

/// P_c = sigma + offset * unit(sigma - phi). Throws Error when sigma == phi.
Vec2 collecting_point(Vec2 phi, Vec2 sigma, double offset);

/// P_d = phi + offset * sqrt(N) * unit(phi - goal); phi itself when phi == goal.
Vec2 driving_point(Vec2 phi, Vec2 goal, double r_a, std::size_t n);

struct Action {
  double direction = 0.0;  // radians in [0, 2pi)
  double speed = 0.0;      // fraction of delta_s, [0, 1]
};

/// Steers toward P_c (collect) or P_d (drive) without overshooting; slows to
/// the transit cap when passing close to sheep on the way to a distant target.
Action scripted_action(const WorldState& world, const WorldParams& params,
                       const ScriptedParams& scripted = {});

/// Target point scripted_action steers toward, exposed for diagnostics.
Vec2 scripted_target(const WorldState& world, const WorldParams& params,
                     const ScriptedParams& scripted = {});

}  // namespace shepherd

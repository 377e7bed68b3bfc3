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

/// @file trace.hpp
/// @brief Per-step herd summaries ("landmarks") and the episode trace built
/// from them.
///
/// A landmark row carries everything the reward functions read, so any
/// reward can be re-evaluated from a stored trace without the full herd.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "shepherd/geometry.hpp"
#include "shepherd/scripted.hpp"

namespace shepherd {

struct Landmarks {
  std::uint64_t t = 0;
  Vec2 psi;          // shepherd position
  Vec2 psi_move;     // shepherd displacement into this state
  Vec2 phi;          // global centre of mass
  Vec2 sigma;        // furthest sheep from phi
  Vec2 sigma_prev;   // the same sheep one step earlier (== sigma at t = 0)
  Vec2 goal;
  double furthest_dist = 0.0;  // |sigma - phi|
  double nearest_dist = 0.0;   // shepherd to closest sheep
  double mean_spread = 0.0;    // mean sheep distance to phi

  bool operator==(const Landmarks&) const = default;
};

/// Summarizes `curr`; `prev` (may be null) supplies sigma's previous position.
Landmarks make_landmarks(const WorldState& curr, const WorldState* prev);

struct TraceRow {
  Landmarks lm;
  ShepherdMode mode = ShepherdMode::kDrive;
  double reward = 0.0;  // per-step reward under the episode's reward mode
  bool operator==(const TraceRow&) const = default;
};

struct EpisodeTrace {
  std::vector<TraceRow> rows;
  std::vector<Vec2> initial_sheep;
  std::vector<Vec2> final_sheep;
  bool operator==(const EpisodeTrace&) const = default;
};

/// CSV layout (comment lines first, then a header and one row per step):
///   # shepherd-trace 1
///   # goal,<x>,<y>
///   # initial,<x0>,<y0>,<x1>,<y1>,...
///   # final,<x0>,<y0>,...
///   t,psi_x,psi_y,phi_x,phi_y,sigma_x,sigma_y,furthest_dist,mode,reward,
///   psi_move_x,psi_move_y,sigma_prev_x,sigma_prev_y,nearest_dist,mean_spread
/// Floats are written as shortest round-trip decimals; reading is exact.
void write_trace_csv(const EpisodeTrace& trace, std::ostream& out);
EpisodeTrace read_trace_csv(std::istream& in);
void save_trace(const EpisodeTrace& trace, const std::string& path);
EpisodeTrace load_trace(const std::string& path);

}  // namespace shepherd

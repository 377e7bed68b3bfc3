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

/// @file sheep.hpp
/// @brief Per-step herd update: repulsion, local attraction, shepherd flight,
/// inertia and noise, with grazing when the shepherd is out of range.

#include <cstddef>

#include "shepherd/geometry.hpp"
#include "shepherd/rng.hpp"

namespace shepherd {

struct SheepParams {
  double rho_a = 2.0;   // sheep-sheep repulsion
  double c = 1.05;      // attraction to the local centre of mass
  double rho_s = 1.0;   // shepherd repulsion
  double h = 0.5;       // inertia
  double e = 0.3;       // noise
  double delta = 1.0;   // step length
  std::size_t n_neighbors = 0;  // 0 selects ceil(2N/3)
  double p_graze = 0.05;
  bool graze = true;

  /// Neighbour count actually used for a herd of size n.
  std::size_t neighbors_for(std::size_t n) const;
  void validate(std::size_t n) const;
};

/// Mean of the `n` nearest other sheep to sheep `i`; distance ties go to the
/// lower index. Throws Error("no neighbours") for a single-sheep herd.
Vec2 lcm_n_nearest(const WorldState& world, std::size_t i, std::size_t n);

/// Heading sheep `i` would take this step given a caller-drawn unit `noise`.
/// Falls back to the current heading when the weighted sum vanishes.
Vec2 sheep_heading(const WorldState& world, std::size_t i, const SheepParams& params,
                   const WorldParams& world_params, Vec2 noise);

/// Synchronous update of every sheep. Shepherd, goal and t are untouched.
///
/// Draw order, per sheep in index order: a threatened sheep draws one noise
/// direction; an unthreatened sheep (grazing enabled) draws one uniform and,
/// if it grazes, one direction.
WorldState sheep_step(const WorldState& world, const SheepParams& params,
                      const WorldParams& world_params, Rng& rng);

}  // namespace shepherd

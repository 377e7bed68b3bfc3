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

#include "shepherd/sheep.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace shepherd {

namespace {

// unit() with a zero fallback for coincident points.
Vec2 unit_or_zero(Vec2 v) {
  const double n = v.norm();
  return n > 0.0 ? v / n : Vec2{};
}

}  // namespace

std::size_t SheepParams::neighbors_for(std::size_t n) const {
  if (n <= 1) return 0;
  const std::size_t k = n_neighbors != 0 ? n_neighbors : (2 * n + 2) / 3;
  return std::min(k, n - 1);
}

void SheepParams::validate(std::size_t n) const {
  for (double w : {rho_a, c, rho_s, h, e, delta}) {
    if (!(w >= 0.0)) throw Error("sheep weights must be >= 0");
  }
  if (!(p_graze >= 0.0 && p_graze <= 1.0)) throw Error("sheep.p_graze must be in [0,1]");
  if (n > 1 && n_neighbors > n - 1) throw Error("sheep.n_neighbors must be <= N-1");
}

Vec2 lcm_n_nearest(const WorldState& world, std::size_t i, std::size_t n) {
  const auto& sheep = world.sheep;
  if (sheep.size() <= 1) throw Error("no neighbours");
  if (n == 0 || n > sheep.size() - 1) throw Error("neighbour count out of range");

  const Vec2 self = sheep[i].position;
  std::vector<std::pair<double, std::size_t>> by_distance;
  by_distance.reserve(sheep.size() - 1);
  for (std::size_t j = 0; j < sheep.size(); ++j) {
    if (j == i) continue;
    by_distance.emplace_back(distance(sheep[j].position, self), j);
  }
  std::nth_element(by_distance.begin(), by_distance.begin() + static_cast<long>(n - 1),
                   by_distance.end());
  // nth_element leaves the n smallest (by distance, then index) in front, unordered;
  // sum them in index order so the result does not depend on the partition.
  std::sort(by_distance.begin(), by_distance.begin() + static_cast<long>(n),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  Vec2 sum;
  for (std::size_t k = 0; k < n; ++k) sum += sheep[by_distance[k].second].position;
  return sum / static_cast<double>(n);
}

Vec2 sheep_heading(const WorldState& world, std::size_t i, const SheepParams& params,
                   const WorldParams& world_params, Vec2 noise) {
  const auto& self = world.sheep[i];
  const Vec2 p = self.position;
  const Vec2 to_shepherd = p - world.shepherd.position;
  const bool threatened = to_shepherd.norm() < world_params.r_s;

  Vec2 repulsion;
  for (std::size_t j = 0; j < world.sheep.size(); ++j) {
    if (j == i) continue;
    const Vec2 away = p - world.sheep[j].position;
    if (away.norm() < world_params.r_a) repulsion += unit_or_zero(away);
  }

  Vec2 attraction;
  Vec2 flight;
  if (threatened) {
    const std::size_t k = params.neighbors_for(world.sheep.size());
    if (k > 0) attraction = unit_or_zero(lcm_n_nearest(world, i, k) - p);
    flight = unit_or_zero(to_shepherd);
  }

  const Vec2 combined = params.h * self.heading + params.c * attraction +
                        params.rho_a * repulsion + params.rho_s * flight + params.e * noise;
  const double len = combined.norm();
  return len > 0.0 ? combined / len : self.heading;
}

WorldState sheep_step(const WorldState& world, const SheepParams& params,
                      const WorldParams& world_params, Rng& rng) {
  WorldState next = world;
  for (std::size_t i = 0; i < world.sheep.size(); ++i) {
    const auto& s = world.sheep[i];
    auto& out = next.sheep[i];
    if (distance(s.position, world.shepherd.position) < world_params.r_s) {
      const Vec2 noise = rng.direction();
      const Vec2 heading = sheep_heading(world, i, params, world_params, noise);
      out.heading = heading;
      out.position = clamp_to_paddock(s.position + params.delta * heading, world_params.l);
    } else if (params.graze) {
      if (rng.uniform() < params.p_graze) {
        const Vec2 dir = rng.direction();
        out.heading = dir;
        out.position = clamp_to_paddock(s.position + params.delta * dir, world_params.l);
      }
    }
  }
  return next;
}

}  // namespace shepherd

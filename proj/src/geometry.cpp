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

#include "shepherd/geometry.hpp"

#include <algorithm>

namespace shepherd {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double Vec2::angle() const { return wrap_angle(std::atan2(y, x)); }

std::vector<Vec2> WorldState::positions() const {
  std::vector<Vec2> out;
  out.reserve(sheep.size());
  for (const auto& s : sheep) out.push_back(s.position);
  return out;
}

void WorldParams::validate() const {
  if (n < 1) throw Error("world.n must be >= 1");
  if (!(l > 0.0)) throw Error("world.l must be > 0");
  if (!(r_a > 0.0)) throw Error("world.r_a must be > 0");
  if (!(r_s > r_a)) throw Error("world.r_s must exceed world.r_a");
  if (!(goal_radius > 0.0)) throw Error("world.goal_radius must be > 0");
}

Vec2 gcm(std::span<const Vec2> positions) {
  if (positions.empty()) throw Error("empty herd");
  Vec2 sum;
  for (const auto& p : positions) sum += p;
  return sum / static_cast<double>(positions.size());
}

Furthest furthest_from(std::span<const Vec2> positions, Vec2 point) {
  if (positions.empty()) throw Error("empty herd");
  Furthest best{0, distance(positions[0], point)};
  for (std::size_t i = 1; i < positions.size(); ++i) {
    const double d = distance(positions[i], point);
    if (d > best.distance) best = {i, d};
  }
  return best;
}

double herd_threshold(std::size_t n, double r_a) {
  const double m = static_cast<double>(n);
  return r_a * std::cbrt(m * m);  // exact on perfect cubes
}

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod of a tiny negative value can round back up to 2pi
  if (w >= kTwoPi) w = 0.0;
  return w;
}

double angular_diff(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

Vec2 unit(Vec2 v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw Error("degenerate direction");
  return v / n;
}

Vec2 clamp_to_paddock(Vec2 p, double l) {
  return {std::clamp(p.x, 0.0, l), std::clamp(p.y, 0.0, l)};
}

}  // namespace shepherd

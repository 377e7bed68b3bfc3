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

/// @file geometry.hpp
/// @brief Paddock geometry and the world state shared by every other module.
///
/// Positions live in the square paddock [0, L]^2. The herd landmarks used by
/// the shepherd and the reward functions (global centre of mass, furthest
/// sheep, herd threshold) are defined here as pure functions.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shepherd {

/// Raised for violated preconditions (empty herd, degenerate direction, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
  /// Heading angle in [0, 2pi).
  double angle() const;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

struct SheepState {
  Vec2 position;
  Vec2 heading{1.0, 0.0};  // unit; last movement direction
  bool operator==(const SheepState&) const = default;
};

struct ShepherdState {
  Vec2 position;
  Vec2 last_move;  // displacement of the previous step
  bool operator==(const ShepherdState&) const = default;
};

struct WorldState {
  std::vector<SheepState> sheep;
  ShepherdState shepherd;
  Vec2 goal;
  std::uint64_t t = 0;

  std::vector<Vec2> positions() const;
  bool operator==(const WorldState&) const = default;
};

struct WorldParams {
  std::size_t n = 15;         // herd size N
  double l = 150.0;           // paddock side
  double r_a = 2.0;           // agent-agent interaction distance
  double r_s = 65.0;          // shepherd interaction distance
  double goal_radius = 6.0;   // 3 * r_a

  /// Throws Error when an invariant is broken.
  void validate() const;
};

/// Mean position of the herd. Throws Error("empty herd") on an empty list.
Vec2 gcm(std::span<const Vec2> positions);

struct Furthest {
  std::size_t index = 0;
  double distance = 0.0;
};

/// Furthest position from `point`; ties go to the lowest index.
Furthest furthest_from(std::span<const Vec2> positions, Vec2 point);

/// Dispersal radius r_a * N^(2/3) separating the collect and drive phases.
double herd_threshold(std::size_t n, double r_a);

/// Minimal absolute separation of two angles, in [0, pi].
double angular_diff(double a, double b);

/// Wraps an angle into [0, 2pi).
double wrap_angle(double a);

/// v / |v|. Throws Error("degenerate direction") for the zero vector.
Vec2 unit(Vec2 v);

/// Clamps a position into the paddock [0, l]^2.
Vec2 clamp_to_paddock(Vec2 p, double l);

}  // namespace shepherd

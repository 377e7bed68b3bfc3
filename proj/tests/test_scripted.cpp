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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "shepherd/rng.hpp"
#include "shepherd/scripted.hpp"

using namespace shepherd;

namespace {

WorldState world_of(std::initializer_list<Vec2> pts, Vec2 psi = {0, 0}) {
  WorldState w;
  for (const auto& p : pts) w.sheep.push_back({p, {1, 0}});
  w.shepherd.position = psi;
  w.goal = {135, 135};
  return w;
}

// Herd of n sheep whose GCM is the origin-centred mean and whose furthest sheep
// lies exactly `far` from it: a symmetric pair plus sheep stacked at the centre.
WorldState herd_with_furthest(std::size_t n, double far) {
  WorldState w;
  const Vec2 c{50, 50};
  w.sheep.push_back({c + Vec2{far, 0}, {1, 0}});
  w.sheep.push_back({c - Vec2{far, 0}, {1, 0}});
  for (std::size_t i = 2; i < n; ++i) w.sheep.push_back({c, {1, 0}});
  w.shepherd.position = {0, 0};
  w.goal = {135, 135};
  return w;
}

void check_vec(Vec2 got, Vec2 want, double tol = 1e-12) {
  CHECK(got.x == doctest::Approx(want.x).epsilon(tol));
  CHECK(got.y == doctest::Approx(want.y).epsilon(tol));
}

}  // namespace

TEST_SUITE("shepherd-scripted") {

TEST_CASE("mode_select threshold and boundary") {
  WorldParams wp;
  wp.r_a = 2.0;
  CHECK(mode_select(herd_with_furthest(8, 8.5), wp) == ShepherdMode::kCollect);
  CHECK(mode_select(herd_with_furthest(8, 8.0), wp) == ShepherdMode::kDrive);
  CHECK(mode_select(world_of({{70, 20}}), wp) == ShepherdMode::kDrive);
}

TEST_CASE("collecting_point") {
  check_vec(collecting_point({0, 0}, {10, 0}, 2.0), {12, 0});
  check_vec(collecting_point({0, 0}, {0, -5}, 1.0), {0, -6});
  // unit(3,4) = (0.6,0.8); (4,5) + 2*(0.6,0.8)
  check_vec(collecting_point({1, 1}, {4, 5}, 2.0), {5.2, 6.6});
  CHECK_THROWS_WITH_AS(collecting_point({3, 3}, {3, 3}, 2.0), "sheep coincides with GCM", Error);
}

TEST_CASE("driving_point") {
  check_vec(driving_point({0, 0}, {10, 0}, 2.0, 4), {-4, 0});
  check_vec(driving_point({0, 0}, {0, 3}, 1.0, 1), {0, -1});
  // offset 2*sqrt(9) = 6 along (0.6,0.8)
  check_vec(driving_point({3, 4}, {0, 0}, 2.0, 9), {6.6, 8.8});
  CHECK(driving_point({7, 7}, {7, 7}, 2.0, 9) == Vec2{7, 7});
}

TEST_CASE("scripted_action examples") {
  WorldParams wp;
  // lone sheep placed so the driving point is (10,0): sheep at (10 + 2, 0) relative to
  // a goal further along +x
  WorldState w = world_of({{12, 0}});
  w.goal = {100, 0};
  // P_d = (12,0) + 2*1*unit((12,0)-(100,0)) = (10,0); shepherd at origin, no sheep within 6
  const Action a = scripted_action(w, wp);
  CHECK(a.direction == doctest::Approx(0.0));
  CHECK(a.speed == doctest::Approx(1.0));

  w.shepherd.position = {10, 0};
  CHECK(scripted_action(w, wp).speed == 0.0);

  // 0.75 units short of the target: speed 0.75 / 1.5
  w.shepherd.position = {9.25, 0};
  CHECK(scripted_action(w, wp).speed == doctest::Approx(0.5));

  // travelling to a far target past a nearby sheep: transit cap
  WorldState t = world_of({{40, 0}, {3, 1}});
  t.goal = {100, 0};
  t.shepherd.position = {0, 0};
  const Action capped = scripted_action(t, wp);
  CHECK(capped.speed == doctest::Approx(0.3));
}

TEST_CASE("property: collecting point lies r_a beyond sigma") {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const Vec2 phi{rng.uniform(0, 150), rng.uniform(0, 150)};
    const Vec2 sigma{rng.uniform(0, 150), rng.uniform(0, 150)};
    const double r_a = rng.uniform(0.1, 5);
    const Vec2 pc = collecting_point(phi, sigma, r_a);
    CHECK(distance(pc, phi) == doctest::Approx(distance(sigma, phi) + r_a).epsilon(1e-12));
  }
}

TEST_CASE("property: driving point, GCM and goal collinear with GCM between") {
  Rng rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    const Vec2 phi{rng.uniform(0, 150), rng.uniform(0, 150)};
    const Vec2 goal{rng.uniform(0, 150), rng.uniform(0, 150)};
    const std::size_t n = 1 + rng.index(60);
    const Vec2 pd = driving_point(phi, goal, 2.0, n);
    const Vec2 a = phi - pd;
    const Vec2 b = goal - phi;
    const double cross = a.x * b.y - a.y * b.x;
    CHECK(std::abs(cross) <= 1e-9 * a.norm() * b.norm());
    CHECK(a.dot(b) > 0.0);
  }
}

TEST_CASE("property: mode_select is scale invariant") {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(30);
    WorldState w;
    for (std::size_t i = 0; i < n; ++i) {
      w.sheep.push_back({{rng.uniform(40, 60), rng.uniform(40, 60)}, {1, 0}});
    }
    WorldParams wp;
    const double lambda = rng.uniform(0.1, 10);
    WorldState scaled = w;
    for (auto& s : scaled.sheep) s.position = lambda * s.position;
    WorldParams sp = wp;
    sp.r_a = lambda * wp.r_a;
    CHECK(mode_select(w, wp) == mode_select(scaled, sp));
  }
}

}  // TEST_SUITE

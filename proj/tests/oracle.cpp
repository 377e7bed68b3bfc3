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

#include "oracle.hpp"

#include <cmath>

namespace oracle {

using shepherd::Vec2;
using shepherd::WorldState;

namespace {

struct View {
  double px, py;        // shepherd
  double mx, my;        // shepherd last move
  double gx, gy;        // GCM
  std::size_t far;      // furthest sheep index
  double sx, sy;        // furthest sheep
  double fd;            // its distance from the GCM
  double nearest;       // nearest sheep to the shepherd
  double spread;        // mean sheep distance to the GCM
  double tx, ty;        // goal
  std::size_t n;
};

View look(const WorldState& w) {
  View v{};
  v.n = w.sheep.size();
  v.px = w.shepherd.position.x;
  v.py = w.shepherd.position.y;
  v.mx = w.shepherd.last_move.x;
  v.my = w.shepherd.last_move.y;
  v.tx = w.goal.x;
  v.ty = w.goal.y;
  for (const auto& s : w.sheep) {
    v.gx += s.position.x;
    v.gy += s.position.y;
  }
  v.gx /= static_cast<double>(v.n);
  v.gy /= static_cast<double>(v.n);
  v.fd = -1;
  v.nearest = 1e300;
  for (std::size_t i = 0; i < v.n; ++i) {
    const double x = w.sheep[i].position.x, y = w.sheep[i].position.y;
    const double d = std::hypot(x - v.gx, y - v.gy);
    v.spread += d;
    if (d > v.fd) {
      v.fd = d;
      v.far = i;
      v.sx = x;
      v.sy = y;
    }
    v.nearest = std::fmin(v.nearest, std::hypot(x - v.px, y - v.py));
  }
  v.spread /= static_cast<double>(v.n);
  return v;
}

double threshold(const View& v, const Params& p) {
  return p.r_a * std::cbrt(static_cast<double>(v.n) * static_cast<double>(v.n));
}

// Collecting point: r_a past the furthest sheep, away from the GCM. With the
// furthest sheep on the GCM the GCM itself is used.
void pc(const View& v, const Params& p, double& x, double& y) {
  const double dx = v.sx - v.gx, dy = v.sy - v.gy;
  const double len = std::hypot(dx, dy);
  if (len == 0) {
    x = v.gx;
    y = v.gy;
    return;
  }
  x = v.sx + p.r_a * dx / len;
  y = v.sy + p.r_a * dy / len;
}

void pd(const View& v, const Params& p, double& x, double& y) {
  const double dx = v.gx - v.tx, dy = v.gy - v.ty;
  const double len = std::hypot(dx, dy);
  if (len == 0) {
    x = v.gx;
    y = v.gy;
    return;
  }
  const double off = p.r_a * std::sqrt(static_cast<double>(v.n));
  x = v.gx + off * dx / len;
  y = v.gy + off * dy / len;
}

// Angle between two vectors via atan2(cross, dot); zero vectors skip the term.
double align(double ax, double ay, double bx, double by, const Params& p) {
  if ((ax == 0 && ay == 0) || (bx == 0 && by == 0)) return 0;
  const double diff = std::fabs(std::atan2(ax * by - ay * bx, ax * bx + ay * by));
  if (diff <= p.dtheta) return p.dtheta - diff;
  return -diff;
}

double closer(double before, double after, double up, double down) {
  if (after < before) return up * (before - after);
  return -down * (after - before);
}

}  // namespace

double collect(const WorldState& prev, const WorldState& curr, const Params& p) {
  const View a = look(prev), b = look(curr);
  double sum = 0;  // reset reward
  const bool outside = b.fd > threshold(b, p);
  if (outside) sum += p.c0;

  double ax, ay, bx, by;
  pc(a, p, ax, ay);
  pc(b, p, bx, by);
  sum += align(b.mx, b.my, bx - b.px, by - b.py, p);
  const double was = std::hypot(a.px - ax, a.py - ay);
  const double now = std::hypot(b.px - bx, b.py - by);
  sum += closer(was, now, 1, 2);
  if (now > p.delta_psi && b.nearest < p.r_s) sum -= p.u0;
  if (now <= p.delta) sum += p.delta - now;

  if (outside) {
    const auto& old = prev.sheep[b.far].position;
    sum += align(b.sx - old.x, b.sy - old.y, b.gx - b.sx, b.gy - b.sy, p);
    sum += closer(a.fd, b.fd, 2, 4);
    if (std::hypot(b.px - b.sx, b.py - b.sy) < p.r_s) sum += p.cf0;
  }
  return sum;
}

double drive(const WorldState& prev, const WorldState& curr, const Params& p) {
  const View a = look(prev), b = look(curr);
  double sum = 0;
  if (!(b.fd > threshold(b, p))) sum += p.d0;

  double ax, ay, bx, by;
  pd(a, p, ax, ay);
  pd(b, p, bx, by);
  sum += align(b.mx, b.my, bx - b.px, by - b.py, p);
  const double was = std::hypot(a.px - ax, a.py - ay);
  const double now = std::hypot(b.px - bx, b.py - by);
  sum += closer(was, now, 1, 2);
  if (now > p.delta_psi && b.nearest < p.r_s) sum -= p.u0;
  if (now <= p.delta) sum += p.delta - now;

  sum += align(b.gx - a.gx, b.gy - a.gy, b.tx - b.gx, b.ty - b.gy, p);
  sum += closer(std::hypot(a.gx - a.tx, a.gy - a.ty), std::hypot(b.gx - b.tx, b.gy - b.ty), 2, 4);
  if (b.nearest < p.r_s) sum += p.df0;
  return sum;
}

double baseline_step(const WorldState& prev, const WorldState& curr, const Params& p) {
  const View a = look(prev), b = look(curr);
  double ax, ay, bx, by;
  pd(a, p, ax, ay);
  pd(b, p, bx, by);
  const double before[4] = {std::hypot(a.px - ax, a.py - ay), std::hypot(a.px - a.gx, a.py - a.gy),
                            a.spread, std::hypot(a.gx - a.tx, a.gy - a.ty)};
  const double after[4] = {std::hypot(b.px - bx, b.py - by), std::hypot(b.px - b.gx, b.py - b.gy),
                           b.spread, std::hypot(b.gx - b.tx, b.gy - b.ty)};
  double sum = 0;
  for (int k = 0; k < 4; ++k) {
    const double change = after[k] - before[k];
    if (std::fabs(change) <= 1e-9) continue;
    sum += change < 0 ? p.beta : -p.beta;
  }
  return sum;
}

double baseline_total(const std::vector<WorldState>& states, const Params& p) {
  double sigma = p.tau;
  for (std::size_t k = 1; k < states.size(); ++k) sigma += baseline_step(states[k - 1], states[k], p);
  const View f = look(states.back());
  return sigma - 4 * (std::hypot(f.px - f.gx, f.py - f.gy) + std::hypot(f.px - f.tx, f.py - f.ty) + f.fd);
}

}  // namespace oracle

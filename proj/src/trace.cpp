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

#include "shepherd/trace.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "shepherd/text.hpp"

namespace shepherd {

Landmarks make_landmarks(const WorldState& curr, const WorldState* prev) {
  const auto pos = curr.positions();
  Landmarks lm;
  lm.t = curr.t;
  lm.psi = curr.shepherd.position;
  lm.psi_move = curr.shepherd.last_move;
  lm.phi = gcm(pos);
  const auto far = furthest_from(pos, lm.phi);
  lm.sigma = pos[far.index];
  lm.sigma_prev = prev != nullptr ? prev->sheep.at(far.index).position : lm.sigma;
  lm.goal = curr.goal;
  lm.furthest_dist = far.distance;

  double nearest = std::numeric_limits<double>::infinity();
  double spread = 0.0;
  for (const auto& p : pos) {
    nearest = std::min(nearest, distance(p, lm.psi));
    spread += distance(p, lm.phi);
  }
  lm.nearest_dist = nearest;
  lm.mean_spread = spread / static_cast<double>(pos.size());
  return lm;
}

namespace {

constexpr const char* kHeader =
    "t,psi_x,psi_y,phi_x,phi_y,sigma_x,sigma_y,furthest_dist,mode,reward,"
    "psi_move_x,psi_move_y,sigma_prev_x,sigma_prev_y,nearest_dist,mean_spread";

void write_points(std::ostream& out, const char* tag, const std::vector<Vec2>& pts) {
  out << "# " << tag;
  for (const auto& p : pts) out << ',' << format_double(p.x) << ',' << format_double(p.y);
  out << '\n';
}

std::vector<Vec2> read_points(std::string_view body) {
  const auto fields = split(body, ',');
  std::vector<Vec2> pts;
  // fields[0] is the tag
  if ((fields.size() - 1) % 2 != 0) throw Error("trace: odd coordinate count");
  for (std::size_t i = 1; i + 1 < fields.size(); i += 2) {
    pts.emplace_back(parse_double(fields[i]), parse_double(fields[i + 1]));
  }
  return pts;
}

}  // namespace

void write_trace_csv(const EpisodeTrace& trace, std::ostream& out) {
  const Vec2 goal = trace.rows.empty() ? Vec2{} : trace.rows.front().lm.goal;
  out << "# shepherd-trace 1\n";
  out << "# goal," << format_double(goal.x) << ',' << format_double(goal.y) << '\n';
  write_points(out, "initial", trace.initial_sheep);
  write_points(out, "final", trace.final_sheep);
  out << kHeader << '\n';
  for (const auto& row : trace.rows) {
    const auto& lm = row.lm;
    const auto f = [](double v) { return format_double(v); };
    out << lm.t << ',' << f(lm.psi.x) << ',' << f(lm.psi.y) << ',' << f(lm.phi.x) << ','
        << f(lm.phi.y) << ',' << f(lm.sigma.x) << ',' << f(lm.sigma.y) << ','
        << f(lm.furthest_dist) << ',' << to_string(row.mode) << ',' << f(row.reward) << ','
        << f(lm.psi_move.x) << ',' << f(lm.psi_move.y) << ',' << f(lm.sigma_prev.x) << ','
        << f(lm.sigma_prev.y) << ',' << f(lm.nearest_dist) << ',' << f(lm.mean_spread) << '\n';
  }
}

EpisodeTrace read_trace_csv(std::istream& in) {
  EpisodeTrace trace;
  Vec2 goal;
  bool header_seen = false;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      const auto body = trim(view.substr(1));
      if (body.starts_with("goal,")) {
        const auto pts = read_points(body);
        if (pts.size() != 1) throw Error("trace: bad goal line");
        goal = pts[0];
      } else if (body.starts_with("initial")) {
        trace.initial_sheep = read_points(body);
      } else if (body.starts_with("final")) {
        trace.final_sheep = read_points(body);
      }
      continue;
    }
    if (!header_seen) {
      if (view != kHeader) throw Error("trace: unexpected header");
      header_seen = true;
      continue;
    }
    const auto fields = split(view, ',');
    if (fields.size() != 16) throw Error("trace: expected 16 columns");
    TraceRow row;
    auto& lm = row.lm;
    lm.t = parse_u64(fields[0]);
    lm.psi = {parse_double(fields[1]), parse_double(fields[2])};
    lm.phi = {parse_double(fields[3]), parse_double(fields[4])};
    lm.sigma = {parse_double(fields[5]), parse_double(fields[6])};
    lm.furthest_dist = parse_double(fields[7]);
    if (fields[8] == "collect") {
      row.mode = ShepherdMode::kCollect;
    } else if (fields[8] == "drive") {
      row.mode = ShepherdMode::kDrive;
    } else {
      throw Error("trace: bad mode '" + std::string(fields[8]) + "'");
    }
    row.reward = parse_double(fields[9]);
    lm.psi_move = {parse_double(fields[10]), parse_double(fields[11])};
    lm.sigma_prev = {parse_double(fields[12]), parse_double(fields[13])};
    lm.nearest_dist = parse_double(fields[14]);
    lm.mean_spread = parse_double(fields[15]);
    lm.goal = goal;
    if (!trace.rows.empty() && lm.t <= trace.rows.back().lm.t) {
      throw Error("trace: timestamps must increase");
    }
    trace.rows.push_back(row);
  }
  if (!header_seen) throw Error("trace: missing header");
  return trace;
}

void save_trace(const EpisodeTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  write_trace_csv(trace, out);
}

EpisodeTrace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  return read_trace_csv(in);
}

}  // namespace shepherd

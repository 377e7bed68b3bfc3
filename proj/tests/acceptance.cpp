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

// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (capped at 9).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracle.hpp"
#include "scenarios.hpp"
#include "shepherd/episode.hpp"
#include "shepherd/experiment.hpp"
#include "shepherd/reward.hpp"
#include "shepherd/sheep.hpp"

using namespace shepherd;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Verdict& v) {
  std::printf("criterion %d: %s  %s  [%s]\n", id, v.pass ? "PASS" : "FAIL", name.c_str(),
              v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return "<missing " + p.string() + ">";
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. scripted shepherd on the desk FullEnv
Verdict simulator_validity() {
  const auto start = Clock::now();
  auto c = desk_preset();
  set_skill(c, RewardMode::kCombined);
  std::size_t wins = 0;
  const auto ctl = scripted_controller(c.episode.world, c.scripted);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    wins += run_episode(ctl, c.episode, RewardMode::kCombined, c.rewards, seed).success;
  }
  const double secs = seconds_since(start);
  return {wins >= 7 && secs < 60.0, fmt("%zu/10 seeds, %.1f s", wins, secs)};
}

// 2 and 3 share the four desk-scale experiments.
struct SkillRates {
  double collect = 0, drive = 0, combined = 0, baseline = 0;
  double seconds = 0;
  std::string error;
};

SkillRates desk_experiments(const fs::path& work) {
  SkillRates r;
  const auto start = Clock::now();
  try {
    for (auto skill :
         {RewardMode::kCollect, RewardMode::kDrive, RewardMode::kCombined, RewardMode::kBaseline}) {
      auto c = desk_preset();
      set_skill(c, skill);
      c.output_dir = (work / (std::string("desk_") + to_string(skill))).string();
      const auto t0 = Clock::now();
      const auto res = run_experiment(c);
      std::printf("  desk %-8s success_rate %.2f  min %.1f avg %.1f max %.1f  (%.0f s)\n",
                  to_string(skill), res.stats.success_rate, res.stats.min_fitness,
                  res.stats.avg_fitness, res.stats.max_fitness, seconds_since(t0));
      std::fflush(stdout);
      switch (skill) {
        case RewardMode::kCollect: r.collect = res.stats.success_rate; break;
        case RewardMode::kDrive: r.drive = res.stats.success_rate; break;
        case RewardMode::kCombined: r.combined = res.stats.success_rate; break;
        case RewardMode::kBaseline: r.baseline = res.stats.success_rate; break;
      }
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = seconds_since(start);
  return r;
}

Verdict curriculum_vs_baseline(const SkillRates& r) {
  if (!r.error.empty()) return {false, r.error};
  const bool ok = r.combined >= 2.0 * r.baseline && r.baseline <= 0.5 && r.seconds <= 3600.0;
  return {ok, fmt("combined %.2f, baseline %.2f, %.0f s for all four skills", r.combined,
                  r.baseline, r.seconds)};
}

Verdict skill_ordering(const SkillRates& r) {
  if (!r.error.empty()) return {false, r.error};
  const bool ok = r.collect >= r.combined && r.drive >= r.combined && r.collect >= 0.5 &&
                  r.drive >= 0.5;
  return {ok, fmt("collect %.2f, drive %.2f, combined %.2f", r.collect, r.drive, r.combined)};
}

// 4. library step rewards against the independent rendering
Verdict reward_equivalence() {
  Rng rng(4004);
  double worst = 0.0;
  const int pairs = 5000;
  for (int k = 0; k < pairs; ++k) {
    auto pp = scenarios::random_params(rng);
    const auto prev = scenarios::random_world(rng);
    const auto curr = scenarios::advance(prev, rng);
    pp.world.n = prev.sheep.size();
    const auto pair = make_step_pair(prev, curr);
    worst = std::max(worst, std::abs(collect_reward_step(pair, pp.lib, pp.world) -
                                     oracle::collect(prev, curr, pp.ref)));
    worst = std::max(worst, std::abs(drive_reward_step(pair, pp.lib, pp.world) -
                                     oracle::drive(prev, curr, pp.ref)));
  }
  return {worst <= 1e-9, fmt("%d pairs, max abs error %.3g", pairs, worst)};
}

// 5. baseline fitness against direct substitution
Verdict baseline_substitution() {
  Rng rng(5005);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    auto pp = scenarios::random_params(rng);
    const auto states = scenarios::random_run(rng, 1 + rng.index(200));
    pp.world.n = states[0].sheep.size();
    worst = std::max(worst, std::abs(baseline_fitness(scenarios::trace_of(states), pp.lib, pp.world) -
                                     oracle::baseline_total(states, pp.ref)));
  }
  return {worst <= 1e-9, fmt("100 traces, max abs error %.3g", worst)};
}

// 6. fronts against the O(P^2) dominance-count rank
Verdict pareto_correctness() {
  Rng rng(6006);
  int mismatches = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng.index(50);
    const std::size_t dims = 1 + rng.index(2);
    std::vector<Objectives> objs(n);
    for (auto& o : objs) {
      for (std::size_t d = 0; d < dims; ++d) o.values.push_back(static_cast<double>(rng.index(8)));
    }
    auto beats = [&](std::size_t a, std::size_t b) {
      bool strictly = false;
      for (std::size_t d = 0; d < dims; ++d) {
        if (objs[a].values[d] < objs[b].values[d]) return false;
        strictly = strictly || objs[a].values[d] > objs[b].values[d];
      }
      return strictly;
    };
    // rank(i) = 1 + max rank of anything dominating i; iterate to a fixed point
    std::vector<std::size_t> rank(n, 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (beats(j, i) && rank[i] < rank[j] + 1) {
            rank[i] = rank[j] + 1;
            changed = true;
          }
        }
      }
    }
    std::vector<std::vector<std::size_t>> want(*std::max_element(rank.begin(), rank.end()) + 1);
    for (std::size_t i = 0; i < n; ++i) want[rank[i]].push_back(i);
    if (non_dominated_fronts(objs) != want) ++mismatches;
  }
  return {mismatches == 0, fmt("200 populations, %d mismatches", mismatches)};
}

// 7. max fitness never drops with fixed evaluation seeds
Verdict elitism_monotonicity() {
  auto c = desk_preset();
  set_skill(c, RewardMode::kDrive);
  c.episode.max_steps = 300;
  c.evolution.pop_size = 12;
  c.evolution.generations = 50;
  c.evolution.threads = 1;
  const auto seeds = training_seeds(run_seed(c.master_seed, 0), c.episode.eval_episodes);
  Rng rng(7007);
  const auto res = evolve(
      c.evolution,
      [&](const Genome& g) { return evaluate_genome(g, c.episode, c.skill, c.rewards, seeds); },
      rng);
  std::size_t drops = 0;
  for (std::size_t g = 1; g < res.stats.size(); ++g) drops += res.stats[g].max < res.stats[g - 1].max;
  return {drops == 0 && res.stats.size() == 51,
          fmt("%zu generations, %zu drops, max %.2f -> %.2f", res.stats.size() - 1, drops,
              res.stats.front().max, res.stats.back().max)};
}

// 8. two identical train invocations
Verdict determinism(const fs::path& work) {
  const std::string args =
      " train --skill combined --seed 17 --set runs=2 --set evolution.pop_size=8"
      " --set evolution.generations=4 --set episode.max_steps=300 --set evolution.threads=3";
  std::vector<fs::path> dirs{work / "det_a", work / "det_b"};
  for (const auto& d : dirs) {
    fs::remove_all(d);
    const std::string cmd = std::string(SHEPHERD_CLI) + args + " --out " + d.string() + " >/dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "train failed: " + cmd};
  }
  std::size_t compared = 0, differ = 0;
  for (const char* f : {"stats.csv", "best_genome.txt", "run_00/fitness.csv", "run_01/fitness.csv",
                        "run_00/best_genome.txt", "run_01/best_genome.txt"}) {
    ++compared;
    const auto a = slurp(dirs[0] / f);
    differ += a.rfind("<missing", 0) == 0 || a != slurp(dirs[1] / f);
  }
  return {differ == 0, fmt("%zu files compared, %zu differ", compared, differ)};
}

// 9. herd dynamics and guard partition
Verdict dynamics_properties() {
  WorldParams wp;
  std::size_t violations = 0;
  std::vector<std::string> failed;
  auto note = [&](bool ok, const char* what) {
    if (!ok) {
      ++violations;
      if (std::find(failed.begin(), failed.end(), what) == failed.end()) failed.push_back(what);
    }
  };

  // repulsion: a lone fleeing sheep strictly gains distance until it hits a wall
  SheepParams flee;
  flee.rho_a = flee.c = flee.h = flee.e = 0.0;
  flee.rho_s = 1.0;
  flee.p_graze = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    WorldState w;
    w.sheep.push_back({{rng.uniform(40, 110), rng.uniform(40, 110)}, rng.direction()});
    w.shepherd.position = clamp_to_paddock(w.sheep[0].position + rng.uniform(1, 60) * rng.direction(), wp.l);
    for (int k = 0; k < 30; ++k) {
      const auto next = sheep_step(w, flee, wp, rng);
      const Vec2 p = next.sheep[0].position;
      if (p.x == 0.0 || p.y == 0.0 || p.x == wp.l || p.y == wp.l) break;
      const double before = distance(w.sheep[0].position, w.shepherd.position);
      const double after = distance(p, w.shepherd.position);
      if (before < wp.r_s) note(after > before, "repulsion");
      w = next;
    }
  }

  // stasis: no grazing and a distant shepherd leave every sheep where it is
  SheepParams still;
  still.p_graze = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    WorldState w;
    for (int i = 0; i < 15; ++i) {
      w.sheep.push_back({{rng.uniform(80, 150), rng.uniform(80, 150)}, rng.direction()});
    }
    auto next = w;
    for (int k = 0; k < 100; ++k) next = sheep_step(next, still, wp, rng);
    note(next.sheep == w.sheep, "stasis");
  }

  // containment: defaults plus heavy grazing, herd pressed into corners
  SheepParams lively;
  lively.p_graze = 0.5;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    WorldState w;
    const double corner = seed % 2 ? 0.0 : wp.l - 5.0;
    for (int i = 0; i < 15; ++i) {
      w.sheep.push_back({{corner + rng.uniform(0, 5), corner + rng.uniform(0, 5)}, rng.direction()});
    }
    w.shepherd.position = seed % 2 ? Vec2{6, 6} : Vec2{wp.l - 6, wp.l - 6};
    for (int k = 0; k < 300; ++k) {
      w = sheep_step(w, lively, wp, rng);
      for (const auto& s : w.sheep) {
        note(s.position.x >= 0 && s.position.y >= 0 && s.position.x <= wp.l && s.position.y <= wp.l,
             "containment");
        note(std::abs(s.heading.norm() - 1.0) <= 1e-12, "unit heading");
      }
    }
  }

  // guard partition: exactly one of the collect and drive phase awards fires
  Rng rng(9009);
  RewardParams with;
  RewardParams without;
  without.c0 = without.d0 = 0.0;
  for (int k = 0; k < 5000; ++k) {
    const auto prev = scenarios::random_world(rng);
    const auto curr = scenarios::advance(prev, rng);
    wp.n = prev.sheep.size();
    const auto pair = make_step_pair(prev, curr);
    const double c = collect_reward_step(pair, with, wp) - collect_reward_step(pair, without, wp);
    const double d = drive_reward_step(pair, with, wp) - drive_reward_step(pair, without, wp);
    const bool collect_fired = std::abs(c - 1.0) < 1e-9;
    const bool drive_fired = std::abs(d - 1.0) < 1e-9;
    note(collect_fired != drive_fired, "threshold partition");
  }
  // exactly on the threshold counts as gathered
  WorldState edge;
  for (Vec2 p : {Vec2{58, 50}, Vec2{42, 50}, Vec2{50, 50}, Vec2{50, 50}, Vec2{50, 50},
                 Vec2{50, 50}, Vec2{50, 50}, Vec2{50, 50}}) {
    edge.sheep.push_back({p, {1, 0}});
  }
  edge.shepherd.position = {10, 10};
  edge.goal = {135, 135};
  wp.n = 8;
  const auto ep = make_step_pair(edge, edge);
  note(collect_reward_step(ep, with, wp) == collect_reward_step(ep, without, wp), "threshold edge");
  note(drive_reward_step(ep, with, wp) - drive_reward_step(ep, without, wp) == 1.0, "threshold edge");

  std::string detail = fmt("%zu violations", violations);
  for (const auto& f : failed) detail += ", " + f;
  return {violations == 0, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string work = "acceptance_work";
  bool skip_desk = false;
  app.add_option("--work-dir", work, "scratch directory for experiment output");
  app.add_flag("--skip-desk", skip_desk, "report criteria 2 and 3 as FAIL without running them");
  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(work);
    report(1, "scripted shepherd succeeds on >= 7/10 desk FullEnv seeds in < 60 s", simulator_validity());
    report(4, "step rewards equal the independent rendering to 1e-9", reward_equivalence());
    report(5, "baseline fitness equals direct substitution to 1e-9", baseline_substitution());
    report(6, "fronts equal brute-force dominance ranks", pareto_correctness());
    report(7, "max fitness non-decreasing over 50 generations", elitism_monotonicity());
    report(8, "identical train invocations are byte-identical", determinism(work));
    report(9, "dynamics property suite", dynamics_properties());
    if (skip_desk) {
      report(2, "combined >= 2x baseline, baseline <= 0.5", {false, "skipped"});
      report(3, "collect, drive >= combined; each single skill >= 0.5", {false, "skipped"});
    } else {
      const auto rates = desk_experiments(work);
      report(2, "combined >= 2x baseline, baseline <= 0.5, within one hour",
             curriculum_vs_baseline(rates));
      report(3, "collect, drive >= combined; each single skill >= 0.5", skill_ordering(rates));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}

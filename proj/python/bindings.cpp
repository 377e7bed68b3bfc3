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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "shepherd/config.hpp"
#include "shepherd/controller.hpp"
#include "shepherd/episode.hpp"
#include "shepherd/evolution.hpp"
#include "shepherd/experiment.hpp"
#include "shepherd/reward.hpp"
#include "shepherd/scripted.hpp"
#include "shepherd/sheep.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace shepherd;

namespace {

std::vector<double> genome_weights(const Genome& g) { return {g.weights.begin(), g.weights.end()}; }

std::vector<std::vector<std::size_t>> fronts_of(const std::vector<std::vector<double>>& values) {
  std::vector<Objectives> objs;
  objs.reserve(values.size());
  for (const auto& v : values) objs.push_back({v, false});
  return non_dominated_fronts(objs);
}

}  // namespace

PYBIND11_MODULE(_shepherd, m) {
  m.doc() = "Shepherding simulator, reward curriculum and neuroevolution";

  py::register_exception<Error>(m, "ShepherdError", PyExc_ValueError);

  py::class_<Vec2>(m, "Vec2")
      .def(py::init<>())
      .def(py::init<double, double>(), "x"_a, "y"_a)
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y)
      .def("norm", &Vec2::norm)
      .def("__eq__", [](const Vec2& a, const Vec2& b) { return a == b; })
      .def("__iter__", [](const Vec2& v) { return py::iter(py::make_tuple(v.x, v.y)); })
      .def("__repr__", [](const Vec2& v) { return py::str("Vec2({}, {})").format(v.x, v.y); });
  py::implicitly_convertible<py::tuple, Vec2>();

  py::class_<SheepState>(m, "SheepState")
      .def(py::init<>())
      .def(py::init([](Vec2 p, Vec2 h) { return SheepState{p, h}; }), "position"_a,
           "heading"_a = Vec2{1, 0})
      .def_readwrite("position", &SheepState::position)
      .def_readwrite("heading", &SheepState::heading);

  py::class_<ShepherdState>(m, "ShepherdState")
      .def(py::init<>())
      .def_readwrite("position", &ShepherdState::position)
      .def_readwrite("last_move", &ShepherdState::last_move);

  py::class_<WorldState>(m, "WorldState")
      .def(py::init<>())
      .def_readwrite("sheep", &WorldState::sheep)
      .def_readwrite("shepherd", &WorldState::shepherd)
      .def_readwrite("goal", &WorldState::goal)
      .def_readwrite("t", &WorldState::t)
      .def("positions", &WorldState::positions)
      .def("__eq__", [](const WorldState& a, const WorldState& b) { return a == b; });

  py::class_<WorldParams>(m, "WorldParams")
      .def(py::init<>())
      .def_readwrite("n", &WorldParams::n)
      .def_readwrite("l", &WorldParams::l)
      .def_readwrite("r_a", &WorldParams::r_a)
      .def_readwrite("r_s", &WorldParams::r_s)
      .def_readwrite("goal_radius", &WorldParams::goal_radius);

  py::class_<SheepParams>(m, "SheepParams")
      .def(py::init<>())
      .def_readwrite("rho_a", &SheepParams::rho_a)
      .def_readwrite("c", &SheepParams::c)
      .def_readwrite("rho_s", &SheepParams::rho_s)
      .def_readwrite("h", &SheepParams::h)
      .def_readwrite("e", &SheepParams::e)
      .def_readwrite("delta", &SheepParams::delta)
      .def_readwrite("n_neighbors", &SheepParams::n_neighbors)
      .def_readwrite("p_graze", &SheepParams::p_graze)
      .def_readwrite("graze", &SheepParams::graze);

  py::class_<RewardParams>(m, "RewardParams")
      .def(py::init<>())
      .def_readwrite("c0", &RewardParams::c0)
      .def_readwrite("d0", &RewardParams::d0)
      .def_readwrite("u0", &RewardParams::u0)
      .def_readwrite("cf0", &RewardParams::cf0)
      .def_readwrite("df0", &RewardParams::df0)
      .def_readwrite("dtheta", &RewardParams::dtheta)
      .def_readwrite("delta", &RewardParams::delta)
      .def_readwrite("delta_psi", &RewardParams::delta_psi)
      .def_readwrite("tau", &RewardParams::tau)
      .def_readwrite("beta", &RewardParams::beta)
      .def_readwrite("combined_pareto", &RewardParams::combined_pareto);

  py::enum_<ShepherdMode>(m, "ShepherdMode")
      .value("COLLECT", ShepherdMode::kCollect)
      .value("DRIVE", ShepherdMode::kDrive);
  py::enum_<RewardMode>(m, "RewardMode")
      .value("COLLECT", RewardMode::kCollect)
      .value("DRIVE", RewardMode::kDrive)
      .value("COMBINED", RewardMode::kCombined)
      .value("BASELINE", RewardMode::kBaseline);
  py::enum_<EnvKind>(m, "EnvKind")
      .value("COLLECT", EnvKind::kCollect)
      .value("DRIVE", EnvKind::kDrive)
      .value("FULL", EnvKind::kFull);

  py::class_<Action>(m, "Action")
      .def(py::init<>())
      .def(py::init([](double d, double s) { return Action{d, s}; }), "direction"_a, "speed"_a)
      .def_readwrite("direction", &Action::direction)
      .def_readwrite("speed", &Action::speed);

  py::class_<Rng>(m, "Rng").def(py::init<std::uint64_t>(), "seed"_a).def("uniform", [](Rng& r) {
    return r.uniform();
  });

  py::class_<Genome>(m, "Genome")
      .def(py::init<>())
      .def_property_readonly("weights", &genome_weights)
      .def_property_readonly("mask", [](const Genome& g) {
        return std::vector<bool>(g.mask.begin(), g.mask.end());
      })
      .def_readwrite("cr", &Genome::cr)
      .def_readwrite("mr", &Genome::mr)
      .def("to_text", [](const Genome& g) { return to_text(g); })
      .def_static("from_text", &genome_from_text)
      .def("__eq__", [](const Genome& a, const Genome& b) { return a == b; });

  py::class_<Objectives>(m, "Objectives")
      .def_readonly("values", &Objectives::values)
      .def_readonly("success", &Objectives::success)
      .def("scalar", &Objectives::scalar);

  py::class_<Landmarks>(m, "Landmarks")
      .def_readonly("t", &Landmarks::t)
      .def_readonly("psi", &Landmarks::psi)
      .def_readonly("phi", &Landmarks::phi)
      .def_readonly("sigma", &Landmarks::sigma)
      .def_readonly("goal", &Landmarks::goal)
      .def_readonly("furthest_dist", &Landmarks::furthest_dist);

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("lm", &TraceRow::lm)
      .def_readonly("mode", &TraceRow::mode)
      .def_readonly("reward", &TraceRow::reward);

  py::class_<EpisodeTrace>(m, "EpisodeTrace")
      .def_readonly("rows", &EpisodeTrace::rows)
      .def_readonly("initial_sheep", &EpisodeTrace::initial_sheep)
      .def_readonly("final_sheep", &EpisodeTrace::final_sheep);

  py::class_<EpisodeConfig>(m, "EpisodeConfig")
      .def(py::init<>())
      .def_readwrite("env", &EpisodeConfig::env)
      .def_readwrite("max_steps", &EpisodeConfig::max_steps)
      .def_readwrite("shepherd_speed", &EpisodeConfig::shepherd_speed)
      .def_readwrite("world", &EpisodeConfig::world)
      .def_readwrite("sheep", &EpisodeConfig::sheep)
      .def_readwrite("eval_episodes", &EpisodeConfig::eval_episodes)
      .def_readwrite("stop_on_success", &EpisodeConfig::stop_on_success);

  py::class_<EpisodeResult>(m, "EpisodeResult")
      .def_readonly("objectives", &EpisodeResult::objectives)
      .def_readonly("success", &EpisodeResult::success)
      .def_readonly("steps_used", &EpisodeResult::steps_used)
      .def_readonly("trace", &EpisodeResult::trace)
      .def_readonly("diagnostic", &EpisodeResult::diagnostic);

  py::class_<EvolutionConfig>(m, "EvolutionConfig")
      .def(py::init<>())
      .def_readwrite("pop_size", &EvolutionConfig::pop_size)
      .def_readwrite("generations", &EvolutionConfig::generations)
      .def_readwrite("parent_pool_target", &EvolutionConfig::parent_pool_target)
      .def_readwrite("mut_sigma", &EvolutionConfig::mut_sigma)
      .def_readwrite("threads", &EvolutionConfig::threads);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init(&desk_preset))
      .def_readwrite("skill", &ExperimentConfig::skill)
      .def_readwrite("runs", &ExperimentConfig::runs)
      .def_readwrite("evolution", &ExperimentConfig::evolution)
      .def_readwrite("episode", &ExperimentConfig::episode)
      .def_readwrite("rewards", &ExperimentConfig::rewards)
      .def_readwrite("master_seed", &ExperimentConfig::master_seed)
      .def_readwrite("output_dir", &ExperimentConfig::output_dir)
      .def_readwrite("heldout_episodes", &ExperimentConfig::heldout_episodes)
      .def("apply", [](ExperimentConfig& c, const std::string& text) { apply_config_text(c, text); })
      .def("set_skill", [](ExperimentConfig& c, RewardMode s) { set_skill(c, s); })
      .def("echo", [](const ExperimentConfig& c) { return echo_config(c); });

  py::class_<RunStats>(m, "RunStats")
      .def_readonly("min_fitness", &RunStats::min_fitness)
      .def_readonly("avg_fitness", &RunStats::avg_fitness)
      .def_readonly("std_fitness", &RunStats::std_fitness)
      .def_readonly("max_fitness", &RunStats::max_fitness)
      .def_readonly("success_rate", &RunStats::success_rate)
      .def_readonly("runs", &RunStats::runs)
      .def_readonly("completed_runs", &RunStats::completed_runs);

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("run", &RunRecord::run)
      .def_readonly("seed", &RunRecord::seed)
      .def_readonly("completed", &RunRecord::completed)
      .def_readonly("best_fitness", &RunRecord::best_fitness)
      .def_readonly("heldout_successes", &RunRecord::heldout_successes)
      .def_readonly("success", &RunRecord::success);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("stats", &ExperimentResult::stats)
      .def_readonly("runs", &ExperimentResult::runs);

  py::class_<OracleReport>(m, "OracleReport")
      .def_readonly("episodes", &OracleReport::episodes)
      .def_readonly("successes", &OracleReport::successes)
      .def_readonly("mean_steps", &OracleReport::mean_steps);

  // swarm model and herd dynamics
  m.def("gcm", [](const std::vector<Vec2>& p) { return gcm(p); }, "positions"_a);
  m.def("furthest_from", [](const std::vector<Vec2>& p, Vec2 point) {
    const auto f = furthest_from(p, point);
    return py::make_tuple(f.index, f.distance);
  }, "positions"_a, "point"_a);
  m.def("herd_threshold", &herd_threshold, "n"_a, "r_a"_a);
  m.def("sheep_step", &sheep_step, "world"_a, "params"_a, "world_params"_a, "rng"_a);

  // scripted shepherd
  m.def("mode_select", &mode_select, "world"_a, "params"_a);
  m.def("collecting_point", &collecting_point, "phi"_a, "sigma"_a, "offset"_a);
  m.def("driving_point", &driving_point, "phi"_a, "goal"_a, "r_a"_a, "n"_a);
  m.def("scripted_action", [](const WorldState& w, const WorldParams& p) {
    return scripted_action(w, p);
  }, "world"_a, "params"_a);

  // controller
  m.def("init_genome", [](std::uint64_t seed) {
    Rng rng(seed);
    return init_genome(rng);
  }, "seed"_a);
  m.def("encode_inputs", [](const WorldState& w, const WorldParams& p) {
    const auto in = encode_inputs(w, p);
    return std::vector<double>(in.begin(), in.end());
  }, "world"_a, "params"_a);
  m.def("forward", [](const Genome& g, const std::vector<double>& inputs) {
    if (inputs.size() != kInputs) throw Error("forward needs 9 inputs");
    Inputs in{};
    std::copy(inputs.begin(), inputs.end(), in.begin());
    return forward(g, in);
  }, "genome"_a, "inputs"_a);

  // rewards
  m.def("collect_reward_step", [](const WorldState& prev, const WorldState& curr,
                                  const RewardParams& rp, const WorldParams& wp) {
    return collect_reward_step(make_step_pair(prev, curr), rp, wp);
  }, "prev"_a, "curr"_a, "params"_a, "world"_a);
  m.def("drive_reward_step", [](const WorldState& prev, const WorldState& curr,
                                const RewardParams& rp, const WorldParams& wp) {
    return drive_reward_step(make_step_pair(prev, curr), rp, wp);
  }, "prev"_a, "curr"_a, "params"_a, "world"_a);
  m.def("baseline_fitness", &baseline_fitness, "trace"_a, "params"_a, "world"_a);
  m.def("episode_objectives", &episode_objectives, "trace"_a, "mode"_a, "params"_a, "world"_a);

  // neuroevolution
  m.def("non_dominated_fronts", &fronts_of, "objectives"_a,
        "Fronts of a list of objective vectors (maximised), as index lists.");

  // episodes
  m.def("init_world", &init_world, "config"_a, "seed"_a);
  m.def("run_scripted_episode", [](const EpisodeConfig& c, RewardMode mode,
                                   const RewardParams& rp, std::uint64_t seed, bool trace) {
    return run_episode(scripted_controller(c.world, {}), c, mode, rp, seed, trace);
  }, "config"_a, "mode"_a, "params"_a, "seed"_a, "trace"_a = false);
  m.def("run_genome_episode", [](const Genome& g, const EpisodeConfig& c, RewardMode mode,
                                 const RewardParams& rp, std::uint64_t seed, bool trace) {
    return run_episode(genome_controller(g, c.world), c, mode, rp, seed, trace);
  }, "genome"_a, "config"_a, "mode"_a, "params"_a, "seed"_a, "trace"_a = false);

  // experiments
  m.def("desk_preset", &desk_preset);
  m.def("full_preset", &full_preset);
  m.def("run_experiment", &run_experiment, "config"_a, "verbose"_a = false,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_oracle", &run_oracle, "config"_a, "episodes"_a);
  m.def("stats_from_dir", &stats_from_dir, "dir"_a);
  m.def("summarize", [](const std::vector<double>& v) {
    const auto s = summarize(v);
    return py::make_tuple(s.min, s.avg, s.std, s.max);
  }, "values"_a);
}

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

// Command line front end: train, eval, replay, stats, oracle.
//
// Exit status: 0 success, 1 usage or configuration error, 2 runtime failure.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shepherd/config.hpp"
#include "shepherd/experiment.hpp"

namespace {

using namespace shepherd;

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct ConfigError : Error {
  using Error::Error;
};

ExperimentConfig build_config(const std::string& preset, const std::string& path,
                              const std::vector<std::string>& overrides) {
  try {
    ExperimentConfig config = preset_by_name(preset);
    if (!path.empty()) config = load_config_file(path, config);
    std::string text;
    for (const auto& o : overrides) text += o + '\n';
    apply_config_text(config, text);
    config.validate();
    return config;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

void print_stats(const RunStats& s, RewardMode skill) {
  std::cout << std::setprecision(10) << "skill " << to_string(skill) << "  runs " << s.runs
            << " (" << s.completed_runs << " completed)\n"
            << "min " << s.min_fitness << "  avg " << s.avg_fitness << " +- " << s.std_fitness
            << "  max " << s.max_fitness << "  success_rate " << s.success_rate << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shepherding simulator and neuroevolution harness"};
  app.require_subcommand(1);

  std::string preset = "desk";
  std::string config_path;
  std::vector<std::string> overrides;
  auto add_config_opts = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--preset", preset, "base preset: desk or full")->capture_default_str();
    sub->add_option("--set", overrides, "override a key, e.g. --set evolution.generations=5");
  };

  std::string skill;
  std::uint64_t seed = 1;
  std::string out_dir;
  bool verbose = false;
  auto* train = app.add_subcommand("train", "evolve controllers for one skill");
  train->add_option("--skill", skill, "collect | drive | combined | baseline")->required();
  train->add_option("--seed", seed, "master seed")->capture_default_str();
  train->add_option("--out", out_dir, "output directory")->required();
  train->add_flag("--verbose", verbose, "print per-generation progress");
  add_config_opts(train);

  std::string genome_path;
  std::size_t episodes = 10;
  auto* eval = app.add_subcommand("eval", "evaluate a saved genome on fresh episodes");
  eval->add_option("--genome", genome_path, "genome file")->required();
  eval->add_option("--episodes", episodes, "episode count")->capture_default_str();
  eval->add_option("--skill", skill, "reward mode (defaults to the config skill)");
  eval->add_option("--seed", seed, "seed for the episode stream")->capture_default_str();
  add_config_opts(eval);

  std::string trace_path;
  auto* replay = app.add_subcommand("replay", "print the step table of a trace file");
  replay->add_option("--trace", trace_path, "trace CSV")->required();

  std::string stats_dir;
  auto* stats = app.add_subcommand("stats", "recompute statistics from a train output directory");
  stats->add_option("--dir", stats_dir, "train output directory")->required();

  auto* oracle = app.add_subcommand("oracle", "validate the simulator with the scripted shepherd");
  oracle->add_option("--episodes", episodes, "episode count")->capture_default_str();
  oracle->add_option("--seed", seed, "master seed")->capture_default_str();
  add_config_opts(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kConfigError;
  }

  try {
    if (*train) {
      auto config = build_config(preset, config_path, overrides);
      try {
        set_skill(config, reward_mode_from_string(skill));
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
      config.master_seed = seed;
      config.output_dir = out_dir;
      const auto result = run_experiment(config, verbose);
      print_stats(result.stats, config.skill);
      return kOk;
    }
    if (*eval) {
      auto config = build_config(preset, config_path, overrides);
      if (!skill.empty()) {
        try {
          set_skill(config, reward_mode_from_string(skill));
        } catch (const Error& e) {
          throw ConfigError(e.what());
        }
      }
      const Genome genome = load_genome(genome_path);
      const auto controller = genome_controller(genome, config.episode.world);
      std::size_t wins = 0;
      double total = 0.0;
      for (std::size_t k = 0; k < episodes; ++k) {
        const auto s = derive_seed(seed, {0xe7, k});
        const auto res = run_episode(controller, config.episode, config.skill, config.rewards, s);
        wins += res.success ? 1 : 0;
        total += res.objectives.scalar();
        std::cout << "episode " << k << " success " << res.success << " steps "
                  << res.steps_used << " fitness " << res.objectives.scalar() << '\n';
      }
      std::cout << "success " << wins << "/" << episodes << "  mean fitness "
                << (episodes ? total / static_cast<double>(episodes) : 0.0) << '\n';
      return kOk;
    }
    if (*replay) {
      const auto trace = load_trace(trace_path);
      std::cout << "initial sheep " << trace.initial_sheep.size() << "  final sheep "
                << trace.final_sheep.size() << "  steps " << trace.rows.size() << '\n';
      std::cout << std::fixed << std::setprecision(3);
      std::cout << std::setw(6) << "t" << std::setw(10) << "psi_x" << std::setw(10) << "psi_y"
                << std::setw(10) << "phi_x" << std::setw(10) << "phi_y" << std::setw(10)
                << "sigma_x" << std::setw(10) << "sigma_y" << std::setw(10) << "furthest"
                << std::setw(9) << "mode" << std::setw(12) << "reward" << '\n';
      for (const auto& row : trace.rows) {
        const auto& lm = row.lm;
        std::cout << std::setw(6) << lm.t << std::setw(10) << lm.psi.x << std::setw(10)
                  << lm.psi.y << std::setw(10) << lm.phi.x << std::setw(10) << lm.phi.y
                  << std::setw(10) << lm.sigma.x << std::setw(10) << lm.sigma.y << std::setw(10)
                  << lm.furthest_dist << std::setw(9) << to_string(row.mode) << std::setw(12)
                  << row.reward << '\n';
      }
      return kOk;
    }
    if (*stats) {
      const auto s = stats_from_dir(stats_dir);
      ExperimentConfig echoed = load_config_file(stats_dir + "/config_echo.txt");
      print_stats(s, echoed.skill);
      return kOk;
    }
    if (*oracle) {
      auto config = build_config(preset, config_path, overrides);
      config.master_seed = seed;
      const auto report = run_oracle(config, episodes);
      std::cout << "scripted shepherd (" << to_string(config.episode.env) << ", N="
                << config.episode.world.n << ", T=" << config.episode.max_steps << "): "
                << report.successes << "/" << report.episodes << " successful, mean steps "
                << report.mean_steps << '\n';
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kConfigError;
}

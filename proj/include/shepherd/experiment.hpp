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

/// @file experiment.hpp
/// @brief Batch driver: independent evolution runs per skill, Table-style
/// statistics, held-out success, fitness curves, traces and footprint heat maps.
///
/// Output directory layout:
///   config_echo.txt           every configuration key
///   stats.csv                 skill,runs,completed_runs,min,avg,std,max,success_rate
///   runs.csv                  run,seed,status,best_fitness,heldout_successes,heldout_episodes,success
///   best_genome.txt           best genome over all runs
///   run_NN/fitness.csv        generation,min,avg,max,success_count
///   run_NN/final_population.csv   member,fitness
///   run_NN/best_genome.txt, trace_best.csv, heatmap_shepherd.csv, heatmap_herd.csv
///   run_NN/checkpoint_genNNNN.txt, trace_genNNNN.csv

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shepherd/config.hpp"
#include "shepherd/trace.hpp"

namespace shepherd {

struct Summary {
  double min = 0.0;
  double avg = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single value
  double max = 0.0;
};

/// Throws Error on an empty list.
Summary summarize(std::span<const double> values);

struct RunStats {
  double min_fitness = 0.0;  // mean over runs of the final population minimum
  double avg_fitness = 0.0;  // mean over runs of the final population average
  double std_fitness = 0.0;  // sample std over runs of the final population average
  double max_fitness = 0.0;  // mean over runs of the final population maximum
  double success_rate = 0.0;
  std::size_t runs = 0;
  std::size_t completed_runs = 0;
};

/// Aggregates per-run final population fitness lists; failed runs count as
/// unsuccessful and are left out of the fitness columns.
RunStats aggregate_runs(std::span<const std::vector<double>> final_fitness,
                        std::size_t successful_runs, std::size_t total_runs);

enum class HeatmapChannel { kShepherd, kHerd };

/// Counts over a B x B grid of [0, L]^2; a point on the upper edge falls in
/// the last bin.
struct HeatmapGrid {
  std::size_t bins = 1;
  double extent = 150.0;
  std::vector<std::uint64_t> counts;  // counts[iy * bins + ix]

  std::uint64_t at(std::size_t ix, std::size_t iy) const { return counts[iy * bins + ix]; }
  std::uint64_t total() const;
};

/// Shepherd channel bins the shepherd; herd channel bins the GCM in drive
/// mode and the furthest sheep in collect mode.
HeatmapGrid heatmap(std::span<const EpisodeTrace> traces, std::size_t bins, HeatmapChannel channel,
                    double extent);

/// B rows (row = y bin, ascending) of B comma-separated counts.
std::string heatmap_csv(const HeatmapGrid& grid);

struct RunRecord {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  bool completed = false;
  std::string error;
  double best_fitness = 0.0;
  std::size_t heldout_successes = 0;
  bool success = false;
};

struct ExperimentResult {
  RunStats stats;
  std::vector<RunRecord> runs;
};

/// Seeds for the training episodes of a run (fixed for the whole run) and for
/// the held-out evaluation of its best genome.
std::vector<std::uint64_t> training_seeds(std::uint64_t run_seed, std::size_t count);
std::vector<std::uint64_t> heldout_seeds(std::uint64_t run_seed, std::size_t count);
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run);

/// Runs the whole batch and writes the artifacts. When `output_dir` is empty
/// nothing is written. Throws Error if the directory cannot be written.
ExperimentResult run_experiment(const ExperimentConfig& config, bool verbose = false);

/// Recomputes RunStats from the artifacts of a finished experiment.
RunStats stats_from_dir(const std::string& dir);

/// stats.csv contents for `stats` and `skill`.
std::string stats_csv(const RunStats& stats, RewardMode skill);

struct OracleReport {
  std::size_t episodes = 0;
  std::size_t successes = 0;
  double mean_steps = 0.0;
};

/// Scripted shepherd on `episodes` seeds derived from the master seed.
OracleReport run_oracle(const ExperimentConfig& config, std::size_t episodes);

}  // namespace shepherd

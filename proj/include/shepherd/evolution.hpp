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

/// @file evolution.hpp
/// @brief Self-adaptive Pareto differential evolution of controller genomes.
///
/// Each generation keeps a parent pool built from successive non-dominated
/// fronts, deletes everyone else, and refills the population with children
/// bred by three-parent differential crossover and uniform-chance mutation.
/// Crossover and mutation rates live in the genome and evolve with it.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "shepherd/controller.hpp"
#include "shepherd/reward.hpp"
#include "shepherd/rng.hpp"

namespace shepherd {

struct EvolutionConfig {
  std::size_t pop_size = 50;
  std::size_t generations = 250;
  std::size_t parent_pool_target = 8;
  std::size_t parent_pool_min = 3;
  double diff_scale = 1.0;   // std dev of the Gaussian differential coefficient
  double mut_sigma = 0.1;    // std dev of a weight mutation
  std::size_t threads = 0;   // evaluation workers; 0 = hardware concurrency

  void validate() const;
};

struct Member {
  Genome genome;
  Objectives objectives;
  bool evaluated = false;
};

struct Population {
  std::vector<Member> members;
  std::size_t generation = 0;
};

/// Maximisation dominance. Throws Error on a length mismatch.
bool dominates(const Objectives& a, const Objectives& b);

/// Successive non-dominated fronts, each listing member indices in ascending
/// order. Together the fronts partition [0, n).
std::vector<std::vector<std::size_t>> non_dominated_fronts(std::span<const Objectives> objs);
std::vector<std::vector<std::size_t>> non_dominated_fronts(const Population& pop);

/// Whole fronts are taken until the pool reaches parent_pool_target; the front
/// that overshoots is cut by descending scalar fitness (lower index on ties).
std::vector<std::size_t> select_parent_pool(const Population& pop, const EvolutionConfig& config);

/// Clamp to [0, 1].
double repair_rate(double r);

/// Differential crossover around base parent a1 followed by mutation.
///
/// Draw order: gene z = index(222); per weight gene one uniform u, and when
/// the gene crosses (g == z or u < a1.cr) one normal for the coefficient;
/// per mask bit one uniform (cross copies a2's bit when u < a1.cr); one normal
/// each for the cr and mr recombination; then per weight gene one uniform and,
/// when u < a1.mr, one normal; per mask bit one uniform (flip when u < a1.mr).
Genome breed_child(const Genome& a1, const Genome& a2, const Genome& a3, Rng& rng,
                   const EvolutionConfig& config);

struct GenerationStats {
  std::size_t generation = 0;
  double min = 0.0;
  double avg = 0.0;
  double max = 0.0;
  std::size_t success_count = 0;
};

using Evaluator = std::function<Objectives(const Genome&)>;
/// Called after each generation is evaluated, before selection.
using GenerationHook = std::function<void(const GenerationStats&, const Population&)>;

struct EvolutionResult {
  Genome best;
  Objectives best_objectives;
  std::size_t best_generation = 0;
  std::vector<GenerationStats> stats;  // generations + 1 entries (initial population first)
  Population final_population;
};

/// Runs `config.generations` generations. The evaluator must be deterministic
/// and thread-safe; a throwing evaluator aborts the run with Error.
EvolutionResult evolve(const EvolutionConfig& config, const Evaluator& evaluator, Rng& rng,
                       const GenerationHook& hook = {});

/// Calls fn(i) for i in [0, n) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace shepherd

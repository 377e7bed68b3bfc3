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

#include "shepherd/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace shepherd {

void EvolutionConfig::validate() const {
  if (pop_size < 3) throw Error("evolution.pop_size must be >= 3");
  if (parent_pool_min < 3) throw Error("evolution.parent_pool_min must be >= 3");
  if (!(parent_pool_min <= parent_pool_target && parent_pool_target <= pop_size)) {
    throw Error("need parent_pool_min <= parent_pool_target <= pop_size");
  }
  if (!(diff_scale >= 0.0) || !(mut_sigma >= 0.0)) throw Error("evolution scales must be >= 0");
}

bool dominates(const Objectives& a, const Objectives& b) {
  if (a.values.size() != b.values.size()) throw Error("objective length mismatch");
  bool strictly = false;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    if (a.values[k] < b.values[k]) return false;
    if (a.values[k] > b.values[k]) strictly = true;
  }
  return strictly;
}

std::vector<std::vector<std::size_t>> non_dominated_fronts(std::span<const Objectives> objs) {
  const std::size_t n = objs.size();
  std::vector<std::vector<std::size_t>> dominated_by_me(n);
  std::vector<std::size_t> domination_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(objs[i], objs[j])) {
        dominated_by_me[i].push_back(j);
        ++domination_count[j];
      } else if (dominates(objs[j], objs[i])) {
        dominated_by_me[j].push_back(i);
        ++domination_count[i];
      }
    }
  }

  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (domination_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (const auto i : current) {
      for (const auto j : dominated_by_me[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<std::vector<std::size_t>> non_dominated_fronts(const Population& pop) {
  std::vector<Objectives> objs;
  objs.reserve(pop.members.size());
  for (const auto& m : pop.members) {
    if (!m.evaluated) throw Error("population has unevaluated members");
    objs.push_back(m.objectives);
  }
  return non_dominated_fronts(objs);
}

std::vector<std::size_t> select_parent_pool(const Population& pop, const EvolutionConfig& config) {
  const auto fronts = non_dominated_fronts(pop);
  const std::size_t target = std::min(config.parent_pool_target, pop.members.size());
  std::vector<std::size_t> pool;
  for (const auto& front : fronts) {
    if (pool.size() >= target) break;
    const std::size_t room = target - pool.size();
    if (front.size() <= room) {
      pool.insert(pool.end(), front.begin(), front.end());
      continue;
    }
    std::vector<std::size_t> ranked = front;
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
      return pop.members[a].objectives.scalar() > pop.members[b].objectives.scalar();
    });
    pool.insert(pool.end(), ranked.begin(), ranked.begin() + static_cast<long>(room));
  }
  return pool;
}

double repair_rate(double r) { return std::clamp(r, 0.0, 1.0); }

Genome breed_child(const Genome& a1, const Genome& a2, const Genome& a3, Rng& rng,
                   const EvolutionConfig& config) {
  Genome child = a1;
  const std::size_t z = rng.index(kWeightGenes);
  for (std::size_t g = 0; g < kWeightGenes; ++g) {
    const double u = rng.uniform();
    if (g == z || u < a1.cr) {
      const double coeff = config.diff_scale * rng.normal();
      child.weights[g] = a1.weights[g] + coeff * (a2.weights[g] - a3.weights[g]);
    }
  }
  for (std::size_t j = 0; j < kHidden; ++j) {
    if (rng.uniform() < a1.cr) child.mask[j] = a2.mask[j];
  }
  child.cr = repair_rate(a1.cr + config.diff_scale * rng.normal() * (a2.cr - a3.cr));
  child.mr = repair_rate(a1.mr + config.diff_scale * rng.normal() * (a2.mr - a3.mr));

  for (auto& w : child.weights) {
    if (rng.uniform() < a1.mr) w += config.mut_sigma * rng.normal();
  }
  for (std::size_t j = 0; j < kHidden; ++j) {
    if (rng.uniform() < a1.mr) child.mask[j] = !child.mask[j];
  }
  return child;
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

GenerationStats summarize_generation(const Population& pop) {
  GenerationStats s;
  s.generation = pop.generation;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const auto& m : pop.members) {
    const double f = m.objectives.scalar();
    s.min = std::min(s.min, f);
    s.max = std::max(s.max, f);
    sum += f;
    if (m.objectives.success) ++s.success_count;
  }
  s.avg = sum / static_cast<double>(pop.members.size());
  return s;
}

}  // namespace

EvolutionResult evolve(const EvolutionConfig& config, const Evaluator& evaluator, Rng& rng,
                       const GenerationHook& hook) {
  config.validate();
  Population pop;
  pop.members.reserve(config.pop_size);
  for (std::size_t i = 0; i < config.pop_size; ++i) pop.members.push_back({init_genome(rng), {}, false});

  EvolutionResult result;
  double best_scalar = -std::numeric_limits<double>::infinity();
  bool have_best = false;

  for (std::size_t g = 0;; ++g) {
    pop.generation = g;
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < pop.members.size(); ++i) {
      if (!pop.members[i].evaluated) todo.push_back(i);
    }
    try {
      parallel_for(todo.size(), config.threads, [&](std::size_t k) {
        auto& m = pop.members[todo[k]];
        m.objectives = evaluator(m.genome);
      });
    } catch (const std::exception& e) {
      throw Error("evaluation failed in generation " + std::to_string(g) + ": " + e.what());
    }
    for (const auto i : todo) pop.members[i].evaluated = true;

    result.stats.push_back(summarize_generation(pop));
    for (const auto& m : pop.members) {
      const double f = m.objectives.scalar();
      if (!have_best || f > best_scalar) {
        have_best = true;
        best_scalar = f;
        result.best = m.genome;
        result.best_objectives = m.objectives;
        result.best_generation = g;
      }
    }
    if (hook) hook(result.stats.back(), pop);
    if (g == config.generations) break;

    const auto pool = select_parent_pool(pop, config);
    Population next;
    next.members.reserve(config.pop_size);
    for (const auto i : pool) next.members.push_back(pop.members[i]);
    while (next.members.size() < config.pop_size) {
      const std::size_t p = pool.size();
      const std::size_t i1 = rng.index(p);
      std::size_t i2 = rng.index(p - 1);
      if (i2 >= i1) ++i2;
      std::size_t i3 = rng.index(p - 2);
      for (const auto taken : {std::min(i1, i2), std::max(i1, i2)}) {
        if (i3 >= taken) ++i3;
      }
      const auto& a1 = pop.members[pool[i1]].genome;
      const auto& a2 = pop.members[pool[i2]].genome;
      const auto& a3 = pop.members[pool[i3]].genome;
      next.members.push_back({breed_child(a1, a2, a3, rng, config), {}, false});
    }
    pop = std::move(next);
  }
  result.final_population = std::move(pop);
  return result;
}

}  // namespace shepherd

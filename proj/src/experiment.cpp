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

#include "shepherd/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>

#include "shepherd/text.hpp"

namespace shepherd {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kTrainStream = 0x7a;
constexpr std::uint64_t kHeldoutStream = 0x4e;
constexpr std::uint64_t kEvolutionStream = 0xe0;
constexpr std::uint64_t kOracleStream = 0x0c;
constexpr std::size_t kTraceCheckpoints[] = {1, 50, 125, 250};

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
  if (!out) throw Error("write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run_dir_name(std::size_t run) {
  std::ostringstream os;
  os << "run_" << std::setw(2) << std::setfill('0') << run;
  return os.str();
}

std::string generation_tag(std::size_t g) {
  std::ostringstream os;
  os << std::setw(4) << std::setfill('0') << g;
  return os.str();
}

std::string fitness_csv(std::span<const GenerationStats> stats) {
  std::ostringstream os;
  os << "generation,min,avg,max,success_count\n";
  for (const auto& s : stats) {
    os << s.generation << ',' << format_double(s.min) << ',' << format_double(s.avg) << ','
       << format_double(s.max) << ',' << s.success_count << '\n';
  }
  return os.str();
}

std::size_t best_member(const Population& pop) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.members.size(); ++i) {
    if (pop.members[i].objectives.scalar() > pop.members[best].objectives.scalar()) best = i;
  }
  return best;
}

std::vector<std::vector<std::string_view>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string_view>> rows;
  std::string_view rest = text;
  bool header = true;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    const auto line = trim(rest.substr(0, nl));
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    rows.push_back(split(line, ','));
  }
  return rows;
}

}  // namespace

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw Error("cannot summarize an empty list");
  Summary s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  s.avg = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.avg) * (v - s.avg);
    s.std = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

RunStats aggregate_runs(std::span<const std::vector<double>> final_fitness,
                        std::size_t successful_runs, std::size_t total_runs) {
  RunStats out;
  out.runs = total_runs;
  std::vector<double> mins, avgs, maxs;
  for (const auto& values : final_fitness) {
    if (values.empty()) continue;
    const auto s = summarize(values);
    mins.push_back(s.min);
    avgs.push_back(s.avg);
    maxs.push_back(s.max);
  }
  out.completed_runs = avgs.size();
  if (!avgs.empty()) {
    out.min_fitness = summarize(mins).avg;
    const auto a = summarize(avgs);
    out.avg_fitness = a.avg;
    out.std_fitness = a.std;
    out.max_fitness = summarize(maxs).avg;
  }
  out.success_rate = total_runs == 0 ? 0.0
                                     : static_cast<double>(successful_runs) /
                                           static_cast<double>(total_runs);
  return out;
}

std::uint64_t HeatmapGrid::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

HeatmapGrid heatmap(std::span<const EpisodeTrace> traces, std::size_t bins, HeatmapChannel channel,
                    double extent) {
  if (bins < 1) throw Error("heatmap needs at least one bin");
  HeatmapGrid grid;
  grid.bins = bins;
  grid.extent = extent;
  grid.counts.assign(bins * bins, 0);
  const auto bin_of = [&](double v) {
    const double scaled = std::floor(v / extent * static_cast<double>(bins));
    if (!(scaled > 0.0)) return std::size_t{0};
    return std::min(bins - 1, static_cast<std::size_t>(scaled));
  };
  for (const auto& trace : traces) {
    for (const auto& row : trace.rows) {
      Vec2 p = row.lm.psi;
      if (channel == HeatmapChannel::kHerd) {
        p = row.mode == ShepherdMode::kCollect ? row.lm.sigma : row.lm.phi;
      }
      ++grid.counts[bin_of(p.y) * bins + bin_of(p.x)];
    }
  }
  return grid;
}

std::string heatmap_csv(const HeatmapGrid& grid) {
  std::ostringstream os;
  for (std::size_t iy = 0; iy < grid.bins; ++iy) {
    for (std::size_t ix = 0; ix < grid.bins; ++ix) {
      if (ix) os << ',';
      os << grid.at(ix, iy);
    }
    os << '\n';
  }
  return os.str();
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run) {
  return derive_seed(master_seed, {run});
}

std::vector<std::uint64_t> training_seeds(std::uint64_t seed, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::size_t e = 0; e < count; ++e) out.push_back(derive_seed(seed, {kTrainStream, e}));
  return out;
}

std::vector<std::uint64_t> heldout_seeds(std::uint64_t seed, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::size_t e = 0; e < count; ++e) out.push_back(derive_seed(seed, {kHeldoutStream, e}));
  return out;
}

std::string stats_csv(const RunStats& s, RewardMode skill) {
  std::ostringstream os;
  os << "skill,runs,completed_runs,min,avg,std,max,success_rate\n";
  os << to_string(skill) << ',' << s.runs << ',' << s.completed_runs << ','
     << format_double(s.min_fitness) << ',' << format_double(s.avg_fitness) << ','
     << format_double(s.std_fitness) << ',' << format_double(s.max_fitness) << ','
     << format_double(s.success_rate) << '\n';
  return os.str();
}

ExperimentResult run_experiment(const ExperimentConfig& config, bool verbose) {
  config.validate();
  const bool write = !config.output_dir.empty();
  const fs::path out_dir = config.output_dir;
  if (write) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory " + out_dir.string() + ": " + ec.message());
    write_file(out_dir / "config_echo.txt", echo_config(config));
  }

  const auto& ep = config.episode;
  ExperimentResult result;
  std::vector<std::vector<double>> final_fitness(config.runs);
  std::vector<bool> run_success(config.runs, false);
  bool have_overall = false;
  double overall_best = 0.0;
  Genome overall_genome;

  for (std::size_t run = 0; run < config.runs; ++run) {
    RunRecord rec;
    rec.run = run;
    rec.seed = run_seed(config.master_seed, run);
    const fs::path run_dir = out_dir / run_dir_name(run);
    try {
      if (write) fs::create_directories(run_dir);
      const auto train = training_seeds(rec.seed, ep.eval_episodes);
      const auto held = heldout_seeds(rec.seed, config.heldout_episodes);
      const Evaluator evaluator = [&](const Genome& g) {
        return evaluate_genome(g, ep, config.skill, config.rewards, train);
      };

      Genome best_so_far;
      double best_so_far_fit = -std::numeric_limits<double>::infinity();
      const GenerationHook hook = [&](const GenerationStats& s, const Population& pop) {
        const auto& champion = pop.members[best_member(pop)];
        if (champion.objectives.scalar() > best_so_far_fit) {
          best_so_far_fit = champion.objectives.scalar();
          best_so_far = champion.genome;
        }
        if (verbose) {
          std::cerr << "[" << to_string(config.skill) << " run " << run << "] gen "
                    << s.generation << " min " << s.min << " avg " << s.avg << " max " << s.max
                    << " success " << s.success_count << '\n';
        }
        if (!write) return;
        if (config.checkpoint_every > 0 && s.generation > 0 &&
            s.generation % config.checkpoint_every == 0) {
          save_genome(best_so_far,
                      (run_dir / ("checkpoint_gen" + generation_tag(s.generation) + ".txt")).string());
        }
        if (std::find(std::begin(kTraceCheckpoints), std::end(kTraceCheckpoints), s.generation) !=
            std::end(kTraceCheckpoints)) {
          const auto res = run_episode(genome_controller(champion.genome, ep.world), ep,
                                       config.skill, config.rewards, held.front(), true);
          save_trace(*res.trace,
                     (run_dir / ("trace_gen" + generation_tag(s.generation) + ".csv")).string());
        }
      };

      Rng rng(derive_seed(rec.seed, {kEvolutionStream}));
      const auto evo = evolve(config.evolution, evaluator, rng, hook);

      std::vector<EpisodeTrace> traces;
      const auto controller = genome_controller(evo.best, ep.world);
      for (const auto seed : held) {
        auto res = run_episode(controller, ep, config.skill, config.rewards, seed, true);
        if (res.success) ++rec.heldout_successes;
        traces.push_back(std::move(*res.trace));
      }
      rec.success = 2 * rec.heldout_successes > held.size();
      rec.best_fitness = evo.best_objectives.scalar();
      rec.completed = true;

      std::vector<double> fits;
      for (const auto& m : evo.final_population.members) fits.push_back(m.objectives.scalar());
      final_fitness[run] = fits;
      run_success[run] = rec.success;
      if (!have_overall || rec.best_fitness > overall_best) {
        have_overall = true;
        overall_best = rec.best_fitness;
        overall_genome = evo.best;
      }

      if (write) {
        write_file(run_dir / "fitness.csv", fitness_csv(evo.stats));
        std::ostringstream pop_csv;
        pop_csv << "member,fitness\n";
        for (std::size_t i = 0; i < fits.size(); ++i) pop_csv << i << ',' << format_double(fits[i]) << '\n';
        write_file(run_dir / "final_population.csv", pop_csv.str());
        save_genome(evo.best, (run_dir / "best_genome.txt").string());
        save_trace(traces.front(), (run_dir / "trace_best.csv").string());
        const auto b = config.heatmap_bins;
        write_file(run_dir / "heatmap_shepherd.csv",
                   heatmap_csv(heatmap(traces, b, HeatmapChannel::kShepherd, ep.world.l)));
        write_file(run_dir / "heatmap_herd.csv",
                   heatmap_csv(heatmap(traces, b, HeatmapChannel::kHerd, ep.world.l)));
      }
      if (verbose) {
        std::cerr << "[" << to_string(config.skill) << " run " << run << "] held-out "
                  << rec.heldout_successes << "/" << held.size()
                  << (rec.success ? " success" : " failure") << '\n';
      }
    } catch (const std::exception& e) {
      rec.completed = false;
      rec.error = e.what();
      if (verbose) std::cerr << "run " << run << " failed: " << e.what() << '\n';
    }
    result.runs.push_back(rec);
  }

  const auto wins = static_cast<std::size_t>(std::count(run_success.begin(), run_success.end(), true));
  result.stats = aggregate_runs(final_fitness, wins, config.runs);

  if (write) {
    write_file(out_dir / "stats.csv", stats_csv(result.stats, config.skill));
    std::ostringstream runs_csv;
    runs_csv << "run,seed,status,best_fitness,heldout_successes,heldout_episodes,success\n";
    for (const auto& r : result.runs) {
      runs_csv << r.run << ',' << r.seed << ',' << (r.completed ? "ok" : "failed") << ','
               << format_double(r.best_fitness) << ',' << r.heldout_successes << ','
               << config.heldout_episodes << ',' << (r.success ? 1 : 0) << '\n';
    }
    write_file(out_dir / "runs.csv", runs_csv.str());
    if (have_overall) save_genome(overall_genome, (out_dir / "best_genome.txt").string());
  }
  return result;
}

RunStats stats_from_dir(const std::string& dir) {
  const fs::path root = dir;
  const auto runs = csv_rows(read_file(root / "runs.csv"));
  if (runs.empty()) throw Error("runs.csv lists no runs");
  std::vector<std::vector<double>> final_fitness(runs.size());
  std::size_t wins = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& row = runs[i];
    if (row.size() != 7) throw Error("runs.csv: expected 7 columns");
    const auto run = parse_u64(row[0]);
    if (row[6] == "1") ++wins;
    if (row[2] != "ok") continue;
    for (const auto& member : csv_rows(read_file(root / run_dir_name(run) / "final_population.csv"))) {
      if (member.size() != 2) throw Error("final_population.csv: expected 2 columns");
      final_fitness[i].push_back(parse_double(member[1]));
    }
  }
  return aggregate_runs(final_fitness, wins, runs.size());
}

OracleReport run_oracle(const ExperimentConfig& config, std::size_t episodes) {
  config.validate();
  OracleReport report;
  report.episodes = episodes;
  const auto controller = scripted_controller(config.episode.world, config.scripted);
  double steps = 0.0;
  for (std::size_t k = 0; k < episodes; ++k) {
    const auto seed = derive_seed(config.master_seed, {kOracleStream, k});
    const auto res = run_episode(controller, config.episode, config.skill, config.rewards, seed);
    if (res.success) ++report.successes;
    steps += static_cast<double>(res.steps_used);
  }
  report.mean_steps = episodes ? steps / static_cast<double>(episodes) : 0.0;
  return report;
}

}  // namespace shepherd

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

#include "shepherd/controller.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace shepherd {

Inputs encode_inputs(const WorldState& world, const WorldParams& params) {
  const auto pos = world.positions();
  const Vec2 phi = gcm(pos);
  const Vec2 sigma = pos[furthest_from(pos, phi).index];
  const Vec2 psi = world.shepherd.position;
  const double l = params.l;
  const Vec2 rel[4] = {(phi - psi) / l, (sigma - psi) / l, (world.goal - psi) / l,
                       (world.goal - phi) / l};
  Inputs in{};
  for (std::size_t k = 0; k < 4; ++k) {
    in[2 * k] = rel[k].x;
    in[2 * k + 1] = rel[k].y;
  }
  in[8] = 1.0;
  return in;
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

ControlOutput forward(const Genome& genome, const Inputs& inputs) {
  std::array<double, kHidden> hidden{};
  for (std::size_t j = 0; j < kHidden; ++j) {
    if (!genome.mask[j]) continue;
    double z = 0.0;
    for (std::size_t i = 0; i < kInputs; ++i) z += genome.w_ih(i, j) * inputs[i];
    hidden[j] = logistic(z);
  }
  std::array<double, kOutputs> out{};
  for (std::size_t k = 0; k < kOutputs; ++k) {
    double z = genome.w_ho(kHidden, k);
    for (std::size_t j = 0; j < kHidden; ++j) z += genome.w_ho(j, k) * hidden[j];
    out[k] = logistic(z);
  }
  return {wrap_angle(2.0 * std::numbers::pi * out[0]), out[1]};
}

Genome init_genome(Rng& rng) {
  Genome g;
  for (auto& w : g.weights) w = std::clamp(rng.normal(), -1.0, 1.0);
  for (std::size_t j = 0; j < kHidden; ++j) g.mask[j] = rng.uniform() < 0.9;
  g.cr = rng.uniform();
  g.mr = rng.uniform();
  return g;
}

std::string to_text(const Genome& genome) {
  std::ostringstream os;
  os << "shepherd-genome 1\n";
  os << "w_ih";
  for (std::size_t i = 0; i < kInputWeights; ++i) os << ' ' << format_double(genome.weights[i]);
  os << "\nw_ho";
  for (std::size_t i = kInputWeights; i < kWeightGenes; ++i) {
    os << ' ' << format_double(genome.weights[i]);
  }
  os << "\nmask ";
  for (bool b : genome.mask) os << (b ? '1' : '0');
  os << "\ncr " << format_double(genome.cr) << "\nmr " << format_double(genome.mr) << '\n';
  return os.str();
}

namespace {

std::vector<std::string> tokens_after(const std::string& line, const std::string& key) {
  std::istringstream is(line);
  std::string head;
  is >> head;
  if (head != key) throw Error("genome: expected '" + key + "' line");
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

Genome genome_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto next = [&]() -> std::string {
    if (!std::getline(is, line)) throw Error("genome: truncated input");
    return line;
  };
  if (trim(next()) != "shepherd-genome 1") throw Error("genome: bad header");

  Genome g;
  const auto ih = tokens_after(next(), "w_ih");
  const auto ho = tokens_after(next(), "w_ho");
  if (ih.size() != kInputWeights || ho.size() != kOutputWeights) {
    throw Error("genome: wrong weight count");
  }
  for (std::size_t i = 0; i < kInputWeights; ++i) g.weights[i] = parse_double(ih[i]);
  for (std::size_t i = 0; i < kOutputWeights; ++i) {
    g.weights[kInputWeights + i] = parse_double(ho[i]);
  }
  const auto mask = tokens_after(next(), "mask");
  if (mask.size() != 1 || mask[0].size() != kHidden) throw Error("genome: bad mask");
  for (std::size_t j = 0; j < kHidden; ++j) {
    const char c = mask[0][j];
    if (c != '0' && c != '1') throw Error("genome: bad mask");
    g.mask[j] = c == '1';
  }
  const auto cr = tokens_after(next(), "cr");
  const auto mr = tokens_after(next(), "mr");
  if (cr.size() != 1 || mr.size() != 1) throw Error("genome: bad rate line");
  g.cr = parse_double(cr[0]);
  g.mr = parse_double(mr[0]);
  for (double w : g.weights) {
    if (!std::isfinite(w)) throw Error("genome: non-finite weight");
  }
  return g;
}

void save_genome(const Genome& genome, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << to_text(genome);
}

Genome load_genome(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return genome_from_text(ss.str());
}

}  // namespace shepherd

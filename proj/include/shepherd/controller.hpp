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

/// @file controller.hpp
/// @brief Evolved shepherd controller: a 9-20-2 logistic network whose hidden
/// units can be switched off by an evolvable mask.
///
/// Inputs are four relative position vectors scaled by the paddock side plus a
/// bias: (GCM - shepherd), (furthest sheep - shepherd), (goal - shepherd),
/// (goal - GCM), 1. Outputs map to a heading 2*pi*o1 and a speed fraction o2.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>

#include "shepherd/geometry.hpp"
#include "shepherd/rng.hpp"
#include "shepherd/scripted.hpp"
#include "shepherd/text.hpp"

namespace shepherd {

inline constexpr std::size_t kInputs = 9;    // includes the bias input
inline constexpr std::size_t kHidden = 20;
inline constexpr std::size_t kOutputs = 2;
inline constexpr std::size_t kInputWeights = kInputs * kHidden;
inline constexpr std::size_t kOutputWeights = (kHidden + 1) * kOutputs;
inline constexpr std::size_t kWeightGenes = kInputWeights + kOutputWeights;

using Inputs = std::array<double, kInputs>;

/// Flat weight layout: w_ih row-major by input (row i, column j at i*20 + j),
/// followed by w_ho row-major by hidden unit (row 20 is the output bias).
struct Genome {
  std::array<double, kWeightGenes> weights{};
  std::array<bool, kHidden> mask{};
  double cr = 0.5;  // crossover rate
  double mr = 0.5;  // mutation rate

  double& w_ih(std::size_t i, std::size_t j) { return weights[i * kHidden + j]; }
  double w_ih(std::size_t i, std::size_t j) const { return weights[i * kHidden + j]; }
  double& w_ho(std::size_t j, std::size_t k) { return weights[kInputWeights + j * kOutputs + k]; }
  double w_ho(std::size_t j, std::size_t k) const {
    return weights[kInputWeights + j * kOutputs + k];
  }

  bool operator==(const Genome&) const = default;
};

using ControlOutput = Action;

Inputs encode_inputs(const WorldState& world, const WorldParams& params);

double logistic(double z);

ControlOutput forward(const Genome& genome, const Inputs& inputs);

/// Weights ~ N(0,1) clamped to [-1, 1]; mask bits on with probability 0.9;
/// cr, mr ~ U[0,1]. Draw order: weights in layout order, mask bits, cr, mr.
Genome init_genome(Rng& rng);

/// Text form:
///   shepherd-genome 1
///   w_ih <180 values>
///   w_ho <42 values>
///   mask <20 chars of 0/1>
///   cr <value>
///   mr <value>
/// Values use the shortest decimal that round-trips exactly.
std::string to_text(const Genome& genome);
Genome genome_from_text(const std::string& text);

void save_genome(const Genome& genome, const std::string& path);
Genome load_genome(const std::string& path);

}  // namespace shepherd

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

/// @file rng.hpp
/// @brief Seeded random stream used by every stochastic operation.
///
/// All randomness flows through `Rng`, a thin wrapper over std::mt19937_64.
/// Draw order is part of each operation's contract: replaying the same calls
/// on an identically seeded engine reproduces every result bit for bit.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "shepherd/geometry.hpp"

namespace shepherd {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// U[0, 1)
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  /// N(0, 1). Each call constructs a fresh distribution, so no value is cached.
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  /// Uniformly random unit vector (one uniform angle draw).
  Vec2 direction() {
    const double a = uniform(0.0, 2.0 * std::numbers::pi);
    return {std::cos(a), std::sin(a)};
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from a parent seed and a key path,
/// e.g. derive_seed(master, {run, 2, episode}).
constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                    std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix64(parent);
  for (auto k : keys) h = mix64(h ^ mix64(k));
  return h;
}

}  // namespace shepherd

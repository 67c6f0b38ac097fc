// Copyright 2026 The etskin Authors
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

#include <cstdint>
#include <random>
#include <vector>

#include "etskin/dh.hpp"
#include "etskin/ets.hpp"

namespace etskin {

// Seeded MT19937-64 (std::mt19937_64). Doubles are formed from the top 53 bits
// of each draw, (x >> 11) * 2^-53, and integers below k as x % k, so sequences
// are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t k) { return static_cast<std::size_t>(next() % k); }
  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

// n values uniform in [lo, hi).
std::vector<double> random_q(Rng& rng, std::size_t n, double lo, double hi);

// 1..max_joints joints placed among 1..max_length terms (length >= joints).
// Mixes all six axes, revolute and prismatic joints, flipped joints, negative
// constants, and joint indices written out of sequence order.
ETS random_ets(Rng& rng, std::size_t max_joints = 10, std::size_t max_length = 30);

DhTable random_dh(Rng& rng, DhConvention convention, std::size_t max_links = 7);

}  // namespace etskin

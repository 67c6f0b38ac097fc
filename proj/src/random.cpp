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

#include "etskin/random.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace etskin {

std::vector<double> random_q(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> q(n);
  for (auto& v : q) v = rng.uniform(lo, hi);
  return q;
}

namespace {

constexpr Axis kAxes[] = {Axis::TX, Axis::TY, Axis::TZ, Axis::RX, Axis::RY, Axis::RZ};

// Fisher-Yates driven by Rng so shuffles do not depend on the library.
template <typename T>
void shuffle(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.index(i)]);
}

}  // namespace

ETS random_ets(Rng& rng, std::size_t max_joints, std::size_t max_length) {
  const std::size_t n = 1 + rng.index(max_joints);
  const std::size_t length = n + rng.index(std::max(max_length, n) - n + 1);

  std::vector<bool> is_joint(length, false);
  std::fill(is_joint.begin(), is_joint.begin() + static_cast<std::ptrdiff_t>(n), true);
  shuffle(rng, is_joint);

  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), 0);
  // Keep sequence order most of the time, scramble it otherwise.
  if (rng.chance(0.3)) shuffle(rng, indices);

  std::vector<ElementaryTransform> terms;
  std::size_t next_joint = 0;
  for (std::size_t m = 0; m < length; ++m) {
    const Axis axis = kAxes[rng.index(6)];
    if (is_joint[m]) {
      terms.push_back({axis, Joint{indices[next_joint++], rng.chance(0.3)}});
    } else {
      const double value = is_rotation(axis) ? rng.uniform(-std::numbers::pi, std::numbers::pi)
                                             : rng.uniform(-1.0, 1.0);
      terms.push_back({axis, Constant{value}});
    }
  }
  return ETS(std::move(terms));
}

DhTable random_dh(Rng& rng, DhConvention convention, std::size_t max_links) {
  DhTable table;
  table.convention = convention;
  const std::size_t links = 1 + rng.index(max_links);
  for (std::size_t i = 0; i < links; ++i) {
    DhLink link;
    link.kind = rng.chance(0.75) ? JointKind::Revolute : JointKind::Prismatic;
    link.theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
    link.d = rng.uniform(-1.0, 1.0);
    link.a = rng.uniform(-1.0, 1.0);
    link.alpha = rng.uniform(-std::numbers::pi, std::numbers::pi);
    link.offset = rng.chance(0.5) ? rng.uniform(-1.0, 1.0) : 0.0;
    // Exercise the zero-term elision.
    if (rng.chance(0.2)) link.a = 0.0;
    if (rng.chance(0.2)) link.alpha = 0.0;
    table.links.push_back(link);
  }
  return table;
}

}  // namespace etskin

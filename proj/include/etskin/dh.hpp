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

#include <vector>

#include "etskin/ets.hpp"

namespace etskin {

enum class DhConvention { Standard, Modified };
enum class JointKind { Revolute, Prismatic };

// One DH link. The joint variable replaces theta (revolute) or d (prismatic),
// so the link angle/length is q + offset and the corresponding field is unused.
struct DhLink {
  double theta = 0.0;
  double d = 0.0;
  double a = 0.0;
  double alpha = 0.0;
  JointKind kind = JointKind::Revolute;
  double offset = 0.0;
};

struct DhTable {
  DhConvention convention = DhConvention::Standard;
  std::vector<DhLink> links;
};

// Standard:  rz(theta) tz(d) tx(a) rx(alpha)
// Modified:  rx(alpha) tx(a) rz(theta) tz(d)
// A variable slot expands to "<axis>(offset) <axis>(q_i)" (offset term omitted
// when zero); zero-valued constant terms are dropped. Joint i gets index q_i.
ETS dh_to_ets(const DhTable& dh);

}  // namespace etskin

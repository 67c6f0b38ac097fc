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

#include "etskin/dh.hpp"

#include <cmath>
#include <string>

#include "etskin/errors.hpp"

namespace etskin {
namespace {

void push_constant(std::vector<ElementaryTransform>& out, Axis axis, double value) {
  if (value != 0.0) out.push_back({axis, Constant{value}});
}

void push_variable(std::vector<ElementaryTransform>& out, Axis axis, double offset,
                   std::size_t joint) {
  push_constant(out, axis, offset);
  out.push_back({axis, Joint{joint, false}});
}

void push_theta(std::vector<ElementaryTransform>& out, const DhLink& link, std::size_t j) {
  if (link.kind == JointKind::Revolute) {
    push_variable(out, Axis::RZ, link.offset, j);
  } else {
    push_constant(out, Axis::RZ, link.theta);
  }
}

void push_d(std::vector<ElementaryTransform>& out, const DhLink& link, std::size_t j) {
  if (link.kind == JointKind::Prismatic) {
    push_variable(out, Axis::TZ, link.offset, j);
  } else {
    push_constant(out, Axis::TZ, link.d);
  }
}

}  // namespace

ETS dh_to_ets(const DhTable& dh) {
  if (dh.links.empty()) throw SchemaError("DH table must contain at least one link");
  std::vector<ElementaryTransform> out;
  for (std::size_t j = 0; j < dh.links.size(); ++j) {
    const DhLink& link = dh.links[j];
    for (double v : {link.theta, link.d, link.a, link.alpha, link.offset}) {
      if (!std::isfinite(v)) {
        throw SchemaError("DH link " + std::to_string(j) + " has a non-finite entry");
      }
    }
    if (dh.convention == DhConvention::Standard) {
      push_theta(out, link, j);
      push_d(out, link, j);
      push_constant(out, Axis::TX, link.a);
      push_constant(out, Axis::RX, link.alpha);
    } else {
      push_constant(out, Axis::RX, link.alpha);
      push_constant(out, Axis::TX, link.a);
      push_theta(out, link, j);
      push_d(out, link, j);
    }
  }
  return ETS(std::move(out));
}

}  // namespace etskin

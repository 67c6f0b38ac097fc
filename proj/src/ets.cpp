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

#include "etskin/ets.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <system_error>

#include "etskin/errors.hpp"

namespace etskin {

double ElementaryTransform::eta(std::span<const double> q) const {
  if (const auto* c = std::get_if<Constant>(&param)) return c->value;
  const auto& j = std::get<Joint>(param);
  return j.flipped ? -q[j.index] : q[j.index];
}

ETS::ETS(std::vector<ElementaryTransform> transforms) : transforms_(std::move(transforms)) {
  std::vector<std::optional<std::size_t>> seen;
  for (std::size_t m = 0; m < transforms_.size(); ++m) {
    const auto& et = transforms_[m];
    if (const auto* c = std::get_if<Constant>(&et.param)) {
      if (!std::isfinite(c->value)) {
        throw Error("ETS: constant at position " + std::to_string(m) + " is not finite");
      }
      continue;
    }
    const std::size_t j = et.joint().index;
    if (j >= seen.size()) seen.resize(j + 1);
    if (seen[j]) {
      throw Error("ETS: joint q" + std::to_string(j) + " appears more than once");
    }
    seen[j] = m;
  }
  joint_positions_.reserve(seen.size());
  for (std::size_t j = 0; j < seen.size(); ++j) {
    if (!seen[j]) {
      throw Error("ETS: joint indices must be contiguous from 0; q" + std::to_string(j) +
                  " is missing");
    }
    joint_positions_.push_back(*seen[j]);
  }
}

std::size_t ETS::joint_position(std::size_t j) const {
  if (j >= joint_positions_.size()) {
    throw RangeError("joint index " + std::to_string(j) + " out of range for n=" +
                     std::to_string(joint_positions_.size()));
  }
  return joint_positions_[j];
}

double Pose::se3_residual() const {
  const Mat3 r = rotation();
  double res = (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
  res = std::max(res, std::abs(r.determinant() - 1.0));
  const Eigen::RowVector4d bottom(0.0, 0.0, 0.0, 1.0);
  res = std::max(res, (m_.row(3) - bottom).cwiseAbs().maxCoeff());
  return res;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("format_number: conversion failed");
  return std::string(buf, ptr);
}

void require_joint_vector(const ETS& ets, std::span<const double> q, std::string_view what) {
  if (q.size() != ets.n()) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(ets.n()) +
                            " joint values, got " + std::to_string(q.size()));
  }
}

Pose fkine(const ETS& ets, std::span<const double> q) {
  require_joint_vector(ets, q, "fkine");
  Mat4 t = Mat4::Identity();
  for (const auto& et : ets.transforms()) t = t * et.matrix(q);
  return Pose(t);
}

Pose link_pose(const ETS& ets, std::span<const double> q, std::size_t a, std::size_t b) {
  require_joint_vector(ets, q, "link_pose");
  if (a > b || b > ets.size()) {
    throw RangeError("link_pose: invalid range [" + std::to_string(a) + ", " +
                     std::to_string(b) + ") for an ETS of length " +
                     std::to_string(ets.size()));
  }
  Mat4 t = Mat4::Identity();
  for (std::size_t m = a; m < b; ++m) t = t * ets[m].matrix(q);
  return Pose(t);
}

}  // namespace etskin

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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "etskin/liealg.hpp"

namespace etskin {

struct Constant {
  double value = 0.0;
  friend bool operator==(const Constant&, const Constant&) = default;
};

struct Joint {
  std::size_t index = 0;
  bool flipped = false;
  friend bool operator==(const Joint&, const Joint&) = default;
};

using EtParam = std::variant<Constant, Joint>;

struct ElementaryTransform {
  Axis axis = Axis::TX;
  EtParam param = Constant{};

  bool is_joint() const { return std::holds_alternative<Joint>(param); }
  const Joint& joint() const { return std::get<Joint>(param); }

  // Value fed to elem_matrix: the constant, or +/- q[index].
  double eta(std::span<const double> q) const;
  Mat4 matrix(std::span<const double> q) const { return elem_matrix(axis, eta(q)); }

  friend bool operator==(const ElementaryTransform&, const ElementaryTransform&) = default;
};

// An ordered product of elementary transforms. Immutable once built; the
// constructor checks that joint indices 0..n-1 each appear exactly once.
class ETS {
 public:
  ETS() = default;
  explicit ETS(std::vector<ElementaryTransform> transforms);

  std::size_t size() const noexcept { return transforms_.size(); }
  std::size_t n() const noexcept { return joint_positions_.size(); }
  bool empty() const noexcept { return transforms_.empty(); }

  const std::vector<ElementaryTransform>& transforms() const noexcept { return transforms_; }
  const ElementaryTransform& operator[](std::size_t m) const { return transforms_[m]; }

  // Sequence position of joint j.
  std::size_t joint_position(std::size_t j) const;
  const std::vector<std::size_t>& joint_positions() const noexcept { return joint_positions_; }
  const ElementaryTransform& joint_transform(std::size_t j) const {
    return transforms_[joint_position(j)];
  }

  friend bool operator==(const ETS& a, const ETS& b) { return a.transforms_ == b.transforms_; }

 private:
  std::vector<ElementaryTransform> transforms_;
  std::vector<std::size_t> joint_positions_;
};

// Homogeneous transform in SE(3).
class Pose {
 public:
  Pose() = default;
  explicit Pose(const Mat4& m) : m_(m) {}

  const Mat4& matrix() const noexcept { return m_; }
  Mat3 rotation() const { return rho(m_); }
  Vec3 translation() const { return tau(m_); }
  Vec3 n() const { return m_.block<3, 1>(0, 0); }
  Vec3 o() const { return m_.block<3, 1>(0, 1); }
  Vec3 a() const { return m_.block<3, 1>(0, 2); }

  // Max of |R^T R - I|_inf, |det R - 1| and the bottom-row deviation.
  double se3_residual() const;

  Pose operator*(const Pose& other) const { return Pose(m_ * other.m_); }

 private:
  Mat4 m_ = Mat4::Identity();
};

// Parses the textual notation, e.g. "tz(0.333) rz(q0) rx(-90deg) ry(-q1)".
// Throws ParseError carrying the byte offset of the offending input.
ETS parse_ets(std::string_view text);

// Canonical lowercase text; constants use the shortest round-trip decimal.
std::string format_ets(const ETS& ets);

// Shortest decimal that reads back to exactly `value`.
std::string format_number(double value);

// Left-to-right product of every transform. Throws DimensionMismatch.
Pose fkine(const ETS& ets, std::span<const double> q);

// Product over sequence positions [a, b). Throws RangeError.
Pose link_pose(const ETS& ets, std::span<const double> q, std::size_t a, std::size_t b);

void require_joint_vector(const ETS& ets, std::span<const double> q, std::string_view what);

}  // namespace etskin

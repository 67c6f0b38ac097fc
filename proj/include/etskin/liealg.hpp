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

#include <Eigen/Dense>

#include <string_view>

namespace etskin {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

// Skew-symmetry tolerance used by the vex preconditions.
inline constexpr double kTolSkew = 1e-9;

// Spatial velocity (or acceleration) ordered (v; w).
struct Twist6 {
  Vec3 v = Vec3::Zero();
  Vec3 w = Vec3::Zero();

  Vec6 vector() const {
    Vec6 out;
    out << v, w;
    return out;
  }
  static Twist6 from_vector(const Vec6& x) { return {x.head<3>(), x.tail<3>()}; }

  friend bool operator==(const Twist6& a, const Twist6& b) {
    return a.v == b.v && a.w == b.w;
  }
};

enum class Axis { TX, TY, TZ, RX, RY, RZ };

constexpr bool is_rotation(Axis axis) noexcept {
  return axis == Axis::RX || axis == Axis::RY || axis == Axis::RZ;
}

// Coordinate index (0, 1, 2) of the axis a transform acts along/about.
constexpr int axis_index(Axis axis) noexcept {
  switch (axis) {
    case Axis::TX:
    case Axis::RX:
      return 0;
    case Axis::TY:
    case Axis::RY:
      return 1;
    case Axis::TZ:
    case Axis::RZ:
      return 2;
  }
  return 0;
}

std::string_view axis_name(Axis axis) noexcept;

Mat3 skew3(const Vec3& w);
// Reads (S32, S13, S21). Throws NotSkewSymmetric if |S + S^T|_inf > kTolSkew.
Vec3 vex3(const Mat3& s);

Mat4 skew6(const Twist6& s);
// Throws NotAugmentedSkew if the rotational block is not skew-symmetric or the
// bottom row is non-zero.
Twist6 vex6(const Mat4& m);

inline Mat3 rho(const Mat4& t) { return t.topLeftCorner<3, 3>(); }
inline Vec3 tau(const Mat4& t) { return t.topRightCorner<3, 1>(); }

// Pure rotation (radians) or pure translation (meters) along one axis.
Mat4 elem_matrix(Axis axis, double eta);

// d/d(eta) elem_matrix(axis, eta) = generator(axis) * elem_matrix(axis, eta).
// For translations the derivative is the generator itself. A flipped joint
// (eta = -q) uses the negated generator.
Mat4 generator(Axis axis, bool flipped = false);

// Elementwise infinity norm of a difference, the comparison used throughout.
template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

template <typename A, typename B>
bool approx_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b,
                  double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

}  // namespace etskin

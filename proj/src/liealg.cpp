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

#include "etskin/liealg.hpp"

#include <cmath>

#include "etskin/errors.hpp"

namespace etskin {

std::string_view axis_name(Axis axis) noexcept {
  switch (axis) {
    case Axis::TX:
      return "tx";
    case Axis::TY:
      return "ty";
    case Axis::TZ:
      return "tz";
    case Axis::RX:
      return "rx";
    case Axis::RY:
      return "ry";
    case Axis::RZ:
      return "rz";
  }
  return "?";
}

Mat3 skew3(const Vec3& w) {
  Mat3 s;
  s << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return s;
}

Vec3 vex3(const Mat3& s) {
  if ((s + s.transpose()).cwiseAbs().maxCoeff() > kTolSkew) {
    throw NotSkewSymmetric("vex3: matrix is not skew-symmetric");
  }
  return {s(2, 1), s(0, 2), s(1, 0)};
}

Mat4 skew6(const Twist6& s) {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<3, 3>() = skew3(s.w);
  m.topRightCorner<3, 1>() = s.v;
  return m;
}

Twist6 vex6(const Mat4& m) {
  const Mat3 r = m.topLeftCorner<3, 3>();
  if ((r + r.transpose()).cwiseAbs().maxCoeff() > kTolSkew ||
      m.row(3).cwiseAbs().maxCoeff() > kTolSkew) {
    throw NotAugmentedSkew("vex6: matrix is not an augmented skew-symmetric matrix");
  }
  return {m.topRightCorner<3, 1>(), Vec3(r(2, 1), r(0, 2), r(1, 0))};
}

Mat4 elem_matrix(Axis axis, double eta) {
  Mat4 t = Mat4::Identity();
  if (!is_rotation(axis)) {
    t(axis_index(axis), 3) = eta;
    return t;
  }
  const double c = std::cos(eta);
  const double s = std::sin(eta);
  // The two coordinates that rotate, in right-handed order.
  const int a = (axis_index(axis) + 1) % 3;
  const int b = (axis_index(axis) + 2) % 3;
  t(a, a) = c;
  t(a, b) = -s;
  t(b, a) = s;
  t(b, b) = c;
  return t;
}

Mat4 generator(Axis axis, bool flipped) {
  const double sign = flipped ? -1.0 : 1.0;
  Twist6 s;
  if (is_rotation(axis)) {
    s.w[axis_index(axis)] = sign;
  } else {
    s.v[axis_index(axis)] = sign;
  }
  return skew6(s);
}

}  // namespace etskin

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

#include "etskin/diffkin.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "etskin/errors.hpp"

namespace etskin {
namespace {

// prefix[m] = E_0 ... E_{m-1},  suffix[m] = E_m ... E_{M-1}.
struct Scan {
  std::vector<Mat4> factors;
  std::vector<Mat4> prefix;
  std::vector<Mat4> suffix;

  Scan(const ETS& ets, std::span<const double> q) {
    const std::size_t size = ets.size();
    factors.reserve(size);
    for (const auto& et : ets.transforms()) factors.push_back(et.matrix(q));
    prefix.assign(size + 1, Mat4::Identity());
    suffix.assign(size + 1, Mat4::Identity());
    for (std::size_t m = 0; m < size; ++m) prefix[m + 1] = prefix[m] * factors[m];
    for (std::size_t m = size; m-- > 0;) suffix[m] = factors[m] * suffix[m + 1];
  }

  const Mat4& end() const { return prefix.back(); }
};

Mat4 joint_generator(const ETS& ets, std::size_t j) {
  const auto& et = ets.joint_transform(j);
  return generator(et.axis, et.joint().flipped);
}

void require_joint(const ETS& ets, std::size_t j, const char* what) {
  if (j >= ets.n()) {
    throw RangeError(std::string(what) + ": joint index " + std::to_string(j) +
                     " out of range for n=" + std::to_string(ets.n()));
  }
}

Vec3 skew_part_vex(const Mat3& m) { return vex3(0.5 * (m - m.transpose())); }

// Joints ordered by where they sit in the sequence.
std::vector<std::size_t> joints_by_position(const ETS& ets) {
  std::vector<std::size_t> order(ets.n());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ets.joint_position(a) < ets.joint_position(b);
  });
  return order;
}

}  // namespace

Vec6 Hessian::entry(std::size_t i, std::size_t j) const {
  Vec6 out;
  for (std::size_t r = 0; r < 6; ++r) out[static_cast<Eigen::Index>(r)] = (*this)(r, i, j);
  return out;
}

void Hessian::set_entry(std::size_t i, std::size_t j, const Vec6& value) {
  for (std::size_t r = 0; r < 6; ++r) (*this)(r, i, j) = value[static_cast<Eigen::Index>(r)];
}

double max_abs_diff(const Hessian& a, const Hessian& b) {
  if (a.n() != b.n()) {
    throw DimensionMismatch("Hessian comparison: n=" + std::to_string(a.n()) + " vs n=" +
                            std::to_string(b.n()));
  }
  double out = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    out = std::max(out, std::abs(a.data()[k] - b.data()[k]));
  }
  return out;
}

Mat4 partial_pose(const ETS& ets, std::span<const double> q, std::size_t j) {
  require_joint_vector(ets, q, "partial_pose");
  require_joint(ets, j, "partial_pose");
  const std::size_t m = ets.joint_position(j);
  const Mat4 before = link_pose(ets, q, 0, m).matrix();
  const Mat4 after = link_pose(ets, q, m + 1, ets.size()).matrix();
  return before * joint_generator(ets, j) * ets[m].matrix(q) * after;
}

Mat4 second_partial_pose(const ETS& ets, std::span<const double> q, std::size_t j,
                         std::size_t k) {
  require_joint_vector(ets, q, "second_partial_pose");
  require_joint(ets, j, "second_partial_pose");
  require_joint(ets, k, "second_partial_pose");
  const std::size_t mj = ets.joint_position(j);
  if (j == k) {
    const Mat4 g = joint_generator(ets, j);
    return link_pose(ets, q, 0, mj).matrix() * g * g * ets[mj].matrix(q) *
           link_pose(ets, q, mj + 1, ets.size()).matrix();
  }
  const std::size_t mk = ets.joint_position(k);
  const std::size_t first = mj < mk ? j : k;
  const std::size_t second = mj < mk ? k : j;
  const std::size_t ma = std::min(mj, mk);
  const std::size_t mb = std::max(mj, mk);
  return link_pose(ets, q, 0, ma).matrix() * joint_generator(ets, first) * ets[ma].matrix(q) *
         link_pose(ets, q, ma + 1, mb).matrix() * joint_generator(ets, second) *
         ets[mb].matrix(q) * link_pose(ets, q, mb + 1, ets.size()).matrix();
}

Jacobian jacobian_naive(const ETS& ets, std::span<const double> q) {
  require_joint_vector(ets, q, "jacobian_naive");
  const Scan scan(ets, q);
  const Mat3 rt = rho(scan.end()).transpose();
  Jacobian jac(6, static_cast<Eigen::Index>(ets.n()));
  for (std::size_t j = 0; j < ets.n(); ++j) {
    const std::size_t m = ets.joint_position(j);
    const Mat4 dt = scan.prefix[m] * joint_generator(ets, j) * scan.factors[m] * scan.suffix[m + 1];
    const auto col = static_cast<Eigen::Index>(j);
    jac.block<3, 1>(0, col) = tau(dt);
    jac.block<3, 1>(3, col) = vex3(rho(dt) * rt);
  }
  return jac;
}

Jacobian jacobian_fast(const ETS& ets, std::span<const double> q) {
  require_joint_vector(ets, q, "jacobian_fast");
  const Scan scan(ets, q);
  Jacobian jac = Jacobian::Zero(6, static_cast<Eigen::Index>(ets.n()));
  for (std::size_t j = 0; j < ets.n(); ++j) {
    const std::size_t m = ets.joint_position(j);
    const auto& et = ets[m];
    // Joint frame (includes the joint's own factor) and the end-effector
    // position expressed in it.
    const Mat4& joint_frame = scan.prefix[m + 1];
    const Vec3 n = joint_frame.block<3, 1>(0, 0);
    const Vec3 o = joint_frame.block<3, 1>(0, 1);
    const Vec3 a = joint_frame.block<3, 1>(0, 2);
    const Vec3 pe = tau(scan.suffix[m + 1]);
    const double x = pe.x(), y = pe.y(), z = pe.z();

    Vec3 v = Vec3::Zero();
    Vec3 w = Vec3::Zero();
    switch (et.axis) {
      case Axis::RX:
        w = n;
        v = a * y - o * z;
        break;
      case Axis::RY:
        w = o;
        v = n * z - a * x;
        break;
      case Axis::RZ:
        w = a;
        v = o * x - n * y;
        break;
      case Axis::TX:
        v = n;
        break;
      case Axis::TY:
        v = o;
        break;
      case Axis::TZ:
        v = a;
        break;
    }
    if (et.joint().flipped) {
      v = -v;
      w = -w;
    }
    const auto col = static_cast<Eigen::Index>(j);
    jac.block<3, 1>(0, col) = v;
    jac.block<3, 1>(3, col) = w;
  }
  return jac;
}

Jacobian jacobian_fd(const ETS& ets, std::span<const double> q, double h) {
  require_joint_vector(ets, q, "jacobian_fd");
  if (!(h > 0.0)) throw Error("jacobian_fd: step must be positive");
  const Mat3 rt = fkine(ets, q).rotation().transpose();
  Jacobian jac(6, static_cast<Eigen::Index>(ets.n()));
  std::vector<double> qp(q.begin(), q.end());
  std::vector<double> qm(q.begin(), q.end());
  for (std::size_t j = 0; j < ets.n(); ++j) {
    qp[j] = q[j] + h;
    qm[j] = q[j] - h;
    const Mat4 d = (fkine(ets, qp).matrix() - fkine(ets, qm).matrix()) / (2.0 * h);
    qp[j] = qm[j] = q[j];
    const auto col = static_cast<Eigen::Index>(j);
    jac.block<3, 1>(0, col) = tau(d);
    // dR R^T is skew only up to O(h^2); project before vex.
    jac.block<3, 1>(3, col) = skew_part_vex(rho(d) * rt);
  }
  return jac;
}

Hessian hessian_naive(const ETS& ets, std::span<const double> q) {
  require_joint_vector(ets, q, "hessian_naive");
  const std::size_t n = ets.n();
  const std::size_t size = ets.size();
  const Scan scan(ets, q);
  const Mat3 rot = rho(scan.end());
  const Mat3 rt = rot.transpose();

  std::vector<Mat4> gens(n);
  std::vector<Mat4> first(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t m = ets.joint_position(j);
    gens[j] = joint_generator(ets, j);
    first[j] = scan.prefix[m] * gens[j] * scan.factors[m] * scan.suffix[m + 1];
  }

  // joint_at[m] = joint index at sequence position m, or n when constant.
  std::vector<std::size_t> joint_at(size, n);
  for (std::size_t j = 0; j < n; ++j) joint_at[ets.joint_position(j)] = j;

  Hessian hess(n);
  auto store = [&](std::size_t i, std::size_t j, const Mat4& ddt) {
    Vec6 e;
    e.head<3>() = tau(ddt);
    e.tail<3>() = vex3(rho(ddt) * rt + rho(first[i]) * rho(first[j]).transpose());
    hess.set_entry(i, j, e);
  };

  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t ma = ets.joint_position(a);
    store(a, a,
          scan.prefix[ma] * gens[a] * gens[a] * scan.factors[ma] * scan.suffix[ma + 1]);
    // Walk forward from joint a, extending the product of the factors between
    // a and each later joint b.
    Mat4 running = scan.prefix[ma] * gens[a] * scan.factors[ma];
    for (std::size_t m = ma + 1; m < size; ++m) {
      const std::size_t b = joint_at[m];
      if (b != n) {
        const Mat4 ddt = running * gens[b] * scan.factors[m] * scan.suffix[m + 1];
        store(a, b, ddt);
        store(b, a, ddt);
      }
      running = running * scan.factors[m];
    }
  }
  return hess;
}

Hessian hessian_from_jacobian(const ETS& ets, const Jacobian& jac) {
  const std::size_t n = ets.n();
  if (static_cast<std::size_t>(jac.cols()) != n) {
    throw DimensionMismatch("hessian_from_jacobian: Jacobian has " +
                            std::to_string(jac.cols()) + " columns, expected " +
                            std::to_string(n));
  }
  const std::vector<std::size_t> order = joints_by_position(ets);
  Hessian hess(n);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t a = order[p];
    const auto ca = static_cast<Eigen::Index>(a);
    const Vec3 wa = jac.block<3, 1>(3, ca);
    // Diagonal: translational w_a x v_a, rotational zero.
    Vec6 diag = Vec6::Zero();
    diag.head<3>() = wa.cross(jac.block<3, 1>(0, ca));
    hess.set_entry(a, a, diag);
    for (std::size_t s = p + 1; s < n; ++s) {
      // a precedes b in the sequence.
      const std::size_t b = order[s];
      const auto cb = static_cast<Eigen::Index>(b);
      const Vec3 wb = jac.block<3, 1>(3, cb);
      const Vec3 lin = wa.cross(jac.block<3, 1>(0, cb));
      Vec6 ab = Vec6::Zero();
      ab.head<3>() = lin;  // H_w_ab = 0: b does not precede a
      Vec6 ba;
      ba.head<3>() = lin;
      ba.tail<3>() = wa.cross(wb);  // H_w_ba = w_a x w_b
      hess.set_entry(a, b, ab);
      hess.set_entry(b, a, ba);
    }
  }
  return hess;
}

Hessian hessian_fast(const ETS& ets, std::span<const double> q) {
  require_joint_vector(ets, q, "hessian_fast");
  return hessian_from_jacobian(ets, jacobian_fast(ets, q));
}

Hessian hessian_fd(const ETS& ets, std::span<const double> q, double h) {
  require_joint_vector(ets, q, "hessian_fd");
  if (!(h > 0.0)) throw Error("hessian_fd: step must be positive");
  const std::size_t n = ets.n();
  Hessian hess(n);
  std::vector<double> qp(q.begin(), q.end());
  std::vector<double> qm(q.begin(), q.end());
  for (std::size_t j = 0; j < n; ++j) {
    qp[j] = q[j] + h;
    qm[j] = q[j] - h;
    const Jacobian d = (jacobian_fast(ets, qp) - jacobian_fast(ets, qm)) / (2.0 * h);
    qp[j] = qm[j] = q[j];
    for (std::size_t i = 0; i < n; ++i) hess.set_entry(i, j, d.col(static_cast<Eigen::Index>(i)));
  }
  return hess;
}

Jacobian nmode3(const Hessian& hess, std::span<const double> v) {
  const std::size_t n = hess.n();
  if (v.size() != n) {
    throw DimensionMismatch("nmode3: expected a vector of length " + std::to_string(n) +
                            ", got " + std::to_string(v.size()));
  }
  Jacobian out(6, static_cast<Eigen::Index>(n));
  const auto data = hess.data();
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const double* fibre = data.data() + (r * n + i) * n;
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += fibre[j] * v[j];
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = acc;
    }
  }
  return out;
}

namespace {

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> x) {
  return {x.data(), static_cast<Eigen::Index>(x.size())};
}

}  // namespace

Twist6 velocity_twist(const ETS& ets, std::span<const double> q, std::span<const double> qd) {
  require_joint_vector(ets, q, "velocity_twist q");
  require_joint_vector(ets, qd, "velocity_twist qd");
  return Twist6::from_vector(jacobian_fast(ets, q) * as_vector(qd));
}

Twist6 accel_twist(const ETS& ets, std::span<const double> q, std::span<const double> qd,
                   std::span<const double> qdd) {
  require_joint_vector(ets, q, "accel_twist q");
  require_joint_vector(ets, qd, "accel_twist qd");
  require_joint_vector(ets, qdd, "accel_twist qdd");
  const Jacobian jac = jacobian_fast(ets, q);
  const Hessian hess = hessian_from_jacobian(ets, jac);
  const Vec6 acc = nmode3(hess, qd) * as_vector(qd) + jac * as_vector(qdd);
  return Twist6::from_vector(acc);
}

}  // namespace etskin

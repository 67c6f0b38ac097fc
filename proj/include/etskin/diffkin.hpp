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
#include <vector>

#include "etskin/ets.hpp"

namespace etskin {

// 6 x n world-frame Jacobian; rows (v; w), one column per joint index.
using Jacobian = Eigen::Matrix<double, 6, Eigen::Dynamic>;

// 6 x n x n world-frame Hessian. Entry (r, i, j) is component r of
// H_ij = d J_i / d q_j; rows 0-2 are translational, 3-5 rotational.
// Storage is r-major, then i, then j, so mode-3 fibres are contiguous.
class Hessian {
 public:
  Hessian() = default;
  explicit Hessian(std::size_t n) : n_(n), data_(6 * n * n, 0.0) {}

  std::size_t n() const noexcept { return n_; }

  double& operator()(std::size_t r, std::size_t i, std::size_t j) {
    return data_[(r * n_ + i) * n_ + j];
  }
  double operator()(std::size_t r, std::size_t i, std::size_t j) const {
    return data_[(r * n_ + i) * n_ + j];
  }

  Vec6 entry(std::size_t i, std::size_t j) const;
  void set_entry(std::size_t i, std::size_t j, const Vec6& value);

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  friend bool operator==(const Hessian&, const Hessian&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

double max_abs_diff(const Hessian& a, const Hessian& b);

// dT/dq_j by the chain rule: every factor kept, the joint's factor replaced by
// its derivative.
Mat4 partial_pose(const ETS& ets, std::span<const double> q, std::size_t j);

// d^2 T / (dq_j dq_k). For j == k the joint's factor gets the squared
// generator, which vanishes for prismatic joints.
Mat4 second_partial_pose(const ETS& ets, std::span<const double> q, std::size_t j,
                         std::size_t k);

// Columns from the full partial products: w_j = vex(dR_j R^T), v_j = tau(dT_j).
Jacobian jacobian_naive(const ETS& ets, std::span<const double> q);

// Closed-form columns from the joint frame axes (n, o, a) and the position of
// the end-effector in the joint frame.
Jacobian jacobian_fast(const ETS& ets, std::span<const double> q);

// Central differences of fkine; angular part is vex(dR/dq_j R^T).
Jacobian jacobian_fd(const ETS& ets, std::span<const double> q, double h = 1e-6);

Hessian hessian_naive(const ETS& ets, std::span<const double> q);

// Built from a Jacobian alone; see hessian_from_jacobian.
Hessian hessian_fast(const ETS& ets, std::span<const double> q);

// Closed-form Hessian given jacobian_fast(ets, q). With a the joint that comes
// first along the sequence and b the other:
//   H_a_ij = w_a x v_b            (symmetric in i, j)
//   H_w_ij = w_j x w_i  if joint j precedes joint i, else 0
Hessian hessian_from_jacobian(const ETS& ets, const Jacobian& jac);

// Central differences of jacobian_fast with respect to each joint.
Hessian hessian_fd(const ETS& ets, std::span<const double> q, double h = 1e-5);

// Mode-3 product: out(r, i) = sum_j H(r, i, j) v_j.
Jacobian nmode3(const Hessian& hess, std::span<const double> v);

// (v; w) = J(q) qd.
Twist6 velocity_twist(const ETS& ets, std::span<const double> q, std::span<const double> qd);

// (a; alpha) = (H x3 qd) qd + J qdd.
Twist6 accel_twist(const ETS& ets, std::span<const double> q, std::span<const double> qd,
                   std::span<const double> qdd);

}  // namespace etskin

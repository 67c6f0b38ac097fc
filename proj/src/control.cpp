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

#include "etskin/control.hpp"

#include <Eigen/Dense>

#include <limits>

#include "etskin/errors.hpp"

namespace etskin {
namespace {

Eigen::VectorXd damped_solve(const Eigen::MatrixXd& jac, const Eigen::VectorXd& rhs,
                             double damping) {
  const Eigen::Index n = jac.cols();
  const Eigen::MatrixXd a = jac.transpose() * jac + damping * Eigen::MatrixXd::Identity(n, n);
  return a.ldlt().solve(jac.transpose() * rhs);
}

Vec3 skew_vex(const Mat3& m) { return vex3(0.5 * (m - m.transpose())); }

}  // namespace

Vec6 pose_error(const Mat4& target, const Mat4& current) {
  Vec6 e;
  e.head<3>() = tau(target) - tau(current);
  e.tail<3>() = skew_vex(rho(target) * rho(current).transpose());
  return e;
}

IkResult ik_dls(const ETS& ets, const Mat4& target, std::span<const double> q0,
                const IkOptions& options) {
  require_joint_vector(ets, q0, "ik");
  if (!(options.damping >= 0.0) || !(options.tol > 0.0)) {
    throw Error("ik: damping must be non-negative and tol positive");
  }
  if (Pose(target).se3_residual() > 1e-9) throw Error("ik: target is not in SE(3)");

  IkResult result;
  Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(q0.data(), static_cast<Eigen::Index>(q0.size()));
  Eigen::VectorXd best = q;
  double best_residual = std::numeric_limits<double>::infinity();

  for (std::size_t it = 0;; ++it) {
    const std::span<const double> qs(q.data(), static_cast<std::size_t>(q.size()));
    const Vec6 e = pose_error(target, fkine(ets, qs).matrix());
    const double residual = e.norm();
    if (residual < best_residual) {
      best_residual = residual;
      best = q;
    }
    if (residual <= options.tol) {
      result.iterations = it;
      result.converged = true;
      break;
    }
    if (it == options.max_iters) {
      result.iterations = it;
      break;
    }
    q += damped_solve(jacobian_fast(ets, qs), e, options.damping);
  }
  result.q.assign(best.data(), best.data() + best.size());
  result.residual = best_residual;
  return result;
}

RrmcResult rrmc(const ETS& ets, std::span<const double> q0, const Twist6& nu,
                const RrmcOptions& options) {
  require_joint_vector(ets, q0, "rrmc");
  if (!(options.dt > 0.0)) throw Error("rrmc: dt must be positive");
  if (options.steps == 0) throw Error("rrmc: steps must be at least 1");

  std::vector<Eigen::Index> rows;
  for (Eigen::Index r = 0; r < 6; ++r) {
    if (options.mask[static_cast<std::size_t>(r)]) rows.push_back(r);
  }
  if (rows.empty()) throw Error("rrmc: mask selects no twist rows");

  const Vec6 target = nu.vector();
  Eigen::VectorXd task(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) task[static_cast<Eigen::Index>(k)] = target[rows[k]];

  RrmcResult result;
  std::vector<double> q(q0.begin(), q0.end());
  Mat4 pose = fkine(ets, q).matrix();
  for (std::size_t step = 0; step < options.steps; ++step) {
    const Jacobian full = jacobian_fast(ets, q);
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(rows.size()), full.cols());
    for (std::size_t k = 0; k < rows.size(); ++k) jac.row(static_cast<Eigen::Index>(k)) = full.row(rows[k]);

    if (jac.cols() > 0) {
      const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
      const auto& sv = svd.singularValues();
      if (sv.size() == 0 || sv[sv.size() - 1] < options.singular_threshold) {
        result.singular_step = step;
        return result;
      }
    } else {
      result.singular_step = step;
      return result;
    }

    const Eigen::VectorXd qd = damped_solve(jac, task, options.damping);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] += qd[static_cast<Eigen::Index>(j)] * options.dt;
    const Mat4 next = fkine(ets, q).matrix();

    RrmcStep rec;
    rec.q = q;
    rec.qd.assign(qd.data(), qd.data() + qd.size());
    rec.realized.v = (tau(next) - tau(pose)) / options.dt;
    rec.realized.w = skew_vex(rho(next) * rho(pose).transpose()) / options.dt;
    result.steps.push_back(std::move(rec));
    pose = next;
  }
  return result;
}

}  // namespace etskin

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

#include "etskin/check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "etskin/errors.hpp"
#include "etskin/random.hpp"

namespace etskin {
namespace {

double translational_asymmetry(const Hessian& h) {
  double out = 0.0;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t i = 0; i < h.n(); ++i) {
      for (std::size_t j = i + 1; j < h.n(); ++j) {
        out = std::max(out, std::abs(h(r, i, j) - h(r, j, i)));
      }
    }
  }
  return out;
}

Hessian fd_of_jacobian(const ETS& ets, std::span<const double> q, double h,
                       const CheckMethods& methods) {
  Hessian out(ets.n());
  std::vector<double> qp(q.begin(), q.end());
  std::vector<double> qm(q.begin(), q.end());
  for (std::size_t j = 0; j < ets.n(); ++j) {
    qp[j] = q[j] + h;
    qm[j] = q[j] - h;
    const Jacobian d = (methods.jacobian_fast(ets, qp) - methods.jacobian_fast(ets, qm)) / (2 * h);
    qp[j] = qm[j] = q[j];
    for (std::size_t i = 0; i < ets.n(); ++i) out.set_entry(i, j, d.col(static_cast<Eigen::Index>(i)));
  }
  return out;
}

}  // namespace

bool CheckReport::pass() const {
  return std::all_of(residuals.begin(), residuals.end(),
                     [](const CheckResidual& r) { return r.pass(); });
}

std::optional<CheckResidual> CheckReport::first_failure() const {
  for (const auto& r : residuals) {
    if (!r.pass()) return r;
  }
  return std::nullopt;
}

CheckReport run_check(const ETS& ets, std::size_t trials, std::uint64_t seed,
                      const CheckTolerances& tol, const CheckMethods& methods) {
  if (trials == 0) throw Error("check: trials must be at least 1");
  CheckReport report;
  report.trials = trials;
  report.seed = seed;
  report.residuals = {
      {"se3", 0.0, tol.se3},
      {"jacobian_fast_vs_naive", 0.0, tol.jacobian_naive},
      {"jacobian_fast_vs_fd", 0.0, tol.jacobian_fd},
      {"hessian_fast_vs_naive", 0.0, tol.hessian_naive},
      {"hessian_fast_vs_fd", 0.0, tol.hessian_fd},
      {"hessian_symmetry_fast", 0.0, tol.symmetry_fast},
      {"hessian_symmetry_naive", 0.0, tol.symmetry_naive},
  };
  auto bump = [&](std::size_t k, double v) {
    // NaN must register as a failure.
    if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
    report.residuals[k].max = std::max(report.residuals[k].max, v);
  };

  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::vector<double> q = random_q(rng, ets.n(), -std::numbers::pi, std::numbers::pi);
    bump(0, fkine(ets, q).se3_residual());

    const Jacobian jf = methods.jacobian_fast(ets, q);
    bump(1, max_abs_diff(jf, jacobian_naive(ets, q)));
    bump(2, max_abs_diff(jf, jacobian_fd(ets, q, tol.fd_step_jacobian)));

    const Hessian hf = methods.hessian_fast(ets, q);
    const Hessian hn = hessian_naive(ets, q);
    bump(3, max_abs_diff(hf, hn));
    bump(4, max_abs_diff(hf, fd_of_jacobian(ets, q, tol.fd_step_hessian, methods)));
    bump(5, translational_asymmetry(hf));
    bump(6, translational_asymmetry(hn));
  }
  return report;
}

}  // namespace etskin

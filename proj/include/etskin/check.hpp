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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "etskin/diffkin.hpp"
#include "etskin/ets.hpp"

namespace etskin {

// Limits applied by run_check. Defaults are the contract values.
struct CheckTolerances {
  double se3 = 1e-10;
  double jacobian_naive = 1e-10;
  double jacobian_fd = 1e-6;
  double hessian_naive = 1e-10;
  double hessian_fd = 1e-5;
  double symmetry_fast = 0.0;
  double symmetry_naive = 1e-10;
  double fd_step_jacobian = 1e-6;
  double fd_step_hessian = 1e-5;
};

// Implementations under test. Swappable so a corrupted fast path can be used as
// a negative control.
struct CheckMethods {
  std::function<Jacobian(const ETS&, std::span<const double>)> jacobian_fast =
      [](const ETS& e, std::span<const double> q) { return etskin::jacobian_fast(e, q); };
  std::function<Hessian(const ETS&, std::span<const double>)> hessian_fast =
      [](const ETS& e, std::span<const double> q) { return etskin::hessian_fast(e, q); };
};

struct CheckResidual {
  std::string name;
  double max = 0.0;
  double tol = 0.0;
  bool pass() const { return max <= tol; }
};

struct CheckReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResidual> residuals;

  bool pass() const;
  // First residual over its tolerance, in report order.
  std::optional<CheckResidual> first_failure() const;
};

// Seeded oracle comparisons over `trials` configurations drawn uniformly from
// [-pi, pi]^n: SE(3) invariants of fkine, Jacobian fast vs naive vs finite
// differences, Hessian fast vs naive vs finite differences of the fast
// Jacobian, and symmetry of the translational Hessian.
CheckReport run_check(const ETS& ets, std::size_t trials, std::uint64_t seed,
                      const CheckTolerances& tol = {}, const CheckMethods& methods = {});

}  // namespace etskin

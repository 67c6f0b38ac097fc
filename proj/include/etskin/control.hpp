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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "etskin/diffkin.hpp"
#include "etskin/ets.hpp"

namespace etskin {

// Pose error (t* - t; vex(skew part of R* R^T)). Zero iff the poses coincide
// (for rotation errors below pi).
Vec6 pose_error(const Mat4& target, const Mat4& current);

struct IkOptions {
  double tol = 1e-8;
  std::size_t max_iters = 100;
  double damping = 1e-6;
};

struct IkResult {
  std::vector<double> q;
  std::size_t iterations = 0;
  double residual = 0.0;  // |pose_error| at q
  bool converged = false;
};

// Damped least squares: q <- q + (J^T J + lambda I)^-1 J^T e.
// On non-convergence returns the best configuration seen.
IkResult ik_dls(const ETS& ets, const Mat4& target, std::span<const double> q0,
                const IkOptions& options = {});

struct RrmcOptions {
  double dt = 1e-3;
  std::size_t steps = 1;
  double damping = 1e-6;
  // Smallest singular value of the task Jacobian below which a step is refused.
  double singular_threshold = 1e-8;
  // Twist rows that form the task; all six by default.
  std::array<bool, 6> mask = {true, true, true, true, true, true};
};

struct RrmcStep {
  std::vector<double> q;   // configuration after the step
  std::vector<double> qd;  // joint rates applied during the step
  Twist6 realized;         // pose change over the step divided by dt
};

struct RrmcResult {
  std::vector<RrmcStep> steps;
  std::optional<std::size_t> singular_step;  // step index where J lost rank
};

// Resolved-rate control: qd = J^+ nu over the masked rows, q <- q + qd dt.
RrmcResult rrmc(const ETS& ets, std::span<const double> q0, const Twist6& nu,
                const RrmcOptions& options);

}  // namespace etskin

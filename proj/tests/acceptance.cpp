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

// Acceptance suite: one line per criterion, exit status non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "etskin/check.hpp"
#include "etskin/control.hpp"
#include "etskin/diffkin.hpp"
#include "etskin/random.hpp"
#include "etskin/robots.hpp"
#include "oracles.hpp"

namespace etskin {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kConfigs = 100;
constexpr std::uint64_t kPopulationSeed = 20240101;

struct Named {
  std::string name;
  ETS ets;
};

// Bundled models plus 20 seeded random chains with n <= 10, M <= 30.
std::vector<Named> population() {
  std::vector<Named> out;
  for (auto& m : bundled_models()) out.push_back({m.name, m.ets});
  Rng rng(kPopulationSeed);
  for (int k = 0; k < 20; ++k) out.push_back({"random" + std::to_string(k), random_ets(rng, 10, 30)});
  return out;
}

// Same seeded configurations for every criterion.
std::vector<std::vector<double>> configurations(const ETS& ets, std::uint64_t salt) {
  Rng rng(kPopulationSeed ^ (salt * 0x9E3779B97F4A7C15ULL));
  std::vector<std::vector<double>> qs;
  for (std::size_t t = 0; t < kConfigs; ++t) qs.push_back(random_q(rng, ets.n(), -kPi, kPi));
  return qs;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c, d);
  return buf;
}

Hessian fd_of_jacobian(const ETS& ets, std::span<const double> q, double h) {
  Hessian out(ets.n());
  std::vector<double> qp(q.begin(), q.end()), qm(q.begin(), q.end());
  for (std::size_t j = 0; j < ets.n(); ++j) {
    qp[j] = q[j] + h;
    qm[j] = q[j] - h;
    const Jacobian d = (jacobian_naive(ets, qp) - jacobian_naive(ets, qm)) / (2 * h);
    qp[j] = qm[j] = q[j];
    for (std::size_t i = 0; i < ets.n(); ++i) out.set_entry(i, j, d.col(static_cast<Eigen::Index>(i)));
  }
  return out;
}

Outcome jacobian_triangle(const std::vector<Named>& pop) {
  const auto start = std::chrono::steady_clock::now();
  double naive = 0, fd = 0;
  std::size_t salt = 0;
  for (const auto& m : pop) {
    for (const auto& q : configurations(m.ets, ++salt)) {
      const Jacobian jf = jacobian_fast(m.ets, q);
      naive = std::max(naive, max_abs_diff(jf, jacobian_naive(m.ets, q)));
      fd = std::max(fd, max_abs_diff(jf, jacobian_fd(m.ets, q, 1e-6)));
    }
  }
  const double secs = seconds_since(start);
  return {naive <= 1e-10 && fd <= 1e-6 && secs <= 10.0,
          fmt("|Jf-Jn|=%.3g (<=1e-10) |Jf-Jfd|=%.3g (<=1e-6) time=%.2fs (<=10s)", naive, fd, secs)};
}

Outcome hessian_triangle(const std::vector<Named>& pop) {
  const auto start = std::chrono::steady_clock::now();
  double naive = 0, fd = 0;
  std::size_t salt = 0;
  for (const auto& m : pop) {
    for (const auto& q : configurations(m.ets, ++salt)) {
      const Hessian hf = hessian_fast(m.ets, q);
      naive = std::max(naive, max_abs_diff(hf, hessian_naive(m.ets, q)));
      fd = std::max(fd, max_abs_diff(hf, fd_of_jacobian(m.ets, q, 1e-5)));
    }
  }
  const double secs = seconds_since(start);
  return {naive <= 1e-10 && fd <= 1e-5 && secs <= 60.0,
          fmt("|Hf-Hn|=%.3g (<=1e-10) |Hf-FD(J)|=%.3g (<=1e-5) time=%.2fs (<=60s)", naive, fd, secs)};
}

double rotational_max(const Hessian& h) {
  double out = 0;
  for (std::size_t r = 3; r < 6; ++r)
    for (std::size_t i = 0; i < h.n(); ++i)
      for (std::size_t j = 0; j < h.n(); ++j) out = std::max(out, std::abs(h(r, i, j)));
  return out;
}

Outcome hessian_structure(const std::vector<Named>& pop) {
  double asym = 0;
  std::size_t salt = 0;
  for (const auto& m : pop) {
    for (const auto& q : configurations(m.ets, ++salt)) {
      const Hessian h = hessian_fast(m.ets, q);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t i = 0; i < h.n(); ++i)
          for (std::size_t j = 0; j < h.n(); ++j) asym = std::max(asym, std::abs(h(r, i, j) - h(r, j, i)));
    }
  }
  // One-joint models: every one-joint member of the population plus 20 more.
  std::vector<ETS> single;
  for (const auto& m : pop) {
    if (m.ets.n() == 1) single.push_back(m.ets);
  }
  Rng rng(kPopulationSeed + 1);
  while (single.size() < 20 + 1) {
    ETS e = random_ets(rng, 1, 30);
    single.push_back(e);
  }
  single.push_back(parse_ets("rz(q0) tx(1)"));
  double one_joint = 0;
  for (const auto& e : single) {
    for (const auto& q : configurations(e, ++salt)) {
      one_joint = std::max(one_joint, rotational_max(hessian_fast(e, q)));
      one_joint = std::max(one_joint, rotational_max(hessian_naive(e, q)) > 1e-12 ? 1.0 : 0.0);
    }
  }
  double planar = 0;
  const ETS p2 = bundled_model("planar2r").ets;
  for (const auto& q : configurations(p2, ++salt)) planar = std::max(planar, rotational_max(hessian_fast(p2, q)));
  return {asym == 0.0 && one_joint == 0.0 && planar == 0.0,
          fmt("H_a asymmetry=%.3g (==0) one-joint |H_w|=%.3g (==0) planar2r |H_w|=%.3g (==0)", asym,
              one_joint, planar)};
}

Outcome se3_invariants(const std::vector<Named>& pop) {
  double orth = 0, det = 0, bottom = 0;
  std::size_t salt = 0;
  for (const auto& m : pop) {
    for (const auto& q : configurations(m.ets, ++salt)) {
      const Mat4 t = fkine(m.ets, q).matrix();
      const Mat3 r = rho(t);
      orth = std::max(orth, (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff());
      det = std::max(det, std::abs(r.determinant() - 1.0));
      bottom = std::max(bottom, (t.row(3) - Eigen::RowVector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff());
    }
  }
  return {orth <= 1e-10 && det <= 1e-10 && bottom == 0.0,
          fmt("|RtR-I|=%.3g (<=1e-10) |det-1|=%.3g (<=1e-10) bottom row dev=%.3g (==0)", orth, det, bottom)};
}

Outcome column_structure(const std::vector<Named>& pop) {
  double prism_fast = 0, prism_naive = 0, axis_dev = 0;
  std::size_t salt = 0;
  for (const auto& m : pop) {
    for (const auto& q : configurations(m.ets, ++salt)) {
      const Jacobian jf = jacobian_fast(m.ets, q);
      const Jacobian jn = jacobian_naive(m.ets, q);
      for (std::size_t j = 0; j < m.ets.n(); ++j) {
        const auto c = static_cast<Eigen::Index>(j);
        const auto& et = m.ets.joint_transform(j);
        if (!is_rotation(et.axis)) {
          prism_fast = std::max(prism_fast, jf.block<3, 1>(3, c).cwiseAbs().maxCoeff());
          prism_naive = std::max(prism_naive, jn.block<3, 1>(3, c).cwiseAbs().maxCoeff());
        } else {
          const Mat3 r = link_pose(m.ets, q, 0, m.ets.joint_position(j) + 1).rotation();
          const Vec3 axis = r.col(axis_index(et.axis)) * (et.joint().flipped ? -1.0 : 1.0);
          axis_dev = std::max(axis_dev, max_abs_diff(jf.block<3, 1>(3, c), axis));
          axis_dev = std::max(axis_dev, max_abs_diff(jn.block<3, 1>(3, c), axis));
        }
      }
    }
  }
  return {prism_fast == 0.0 && prism_naive <= 1e-12 && axis_dev <= 1e-12,
          fmt("prismatic |w| fast=%.3g (==0) naive=%.3g (<=1e-12) revolute axis dev=%.3g (<=1e-12)",
              prism_fast, prism_naive, axis_dev)};
}

Outcome dh_equivalence() {
  Rng rng(kPopulationSeed + 2);
  double worst = 0;
  for (auto conv : {DhConvention::Standard, DhConvention::Modified}) {
    for (int k = 0; k < 20; ++k) {
      const DhTable dh = random_dh(rng, conv, 7);
      const ETS ets = dh_to_ets(dh);
      for (std::size_t t = 0; t < kConfigs; ++t) {
        const auto q = random_q(rng, dh.links.size(), -kPi, kPi);
        worst = std::max(worst, max_abs_diff(fkine(ets, q).matrix(), oracle::dh_product(dh, q)));
      }
    }
  }
  return {worst <= 1e-12, fmt("|T_ets - T_dh|=%.3g (<=1e-12) over 40 tables x 100 q", worst)};
}

Outcome twist_maps(const std::vector<Named>& pop) {
  double vel = 0, acc = 0;
  Rng rng(kPopulationSeed + 3);
  for (const auto& m : pop) {
    for (int t = 0; t < 20; ++t) {
      const auto q = random_q(rng, m.ets.n(), -kPi, kPi);
      const auto qd = random_q(rng, m.ets.n(), -1, 1);
      const auto qdd = random_q(rng, m.ets.n(), -1, 1);
      const std::vector<double> zero(m.ets.n(), 0.0);
      vel = std::max(vel, max_abs_diff(velocity_twist(m.ets, q, qd).vector(),
                                       oracle::path_velocity(m.ets, q, qd, zero, 0.0, 1e-6)));
      acc = std::max(acc, max_abs_diff(accel_twist(m.ets, q, qd, qdd).vector(),
                                       oracle::path_acceleration(m.ets, q, qd, qdd, 1e-4)));
    }
  }
  const Vec6 c = accel_twist(parse_ets("rz(q0) tx(1)"), std::vector<double>{0.0},
                             std::vector<double>{1.0}, std::vector<double>{0.0})
                     .vector();
  const double centripetal = max_abs_diff(c, (Vec6() << -1, 0, 0, 0, 0, 0).finished());
  return {vel <= 1e-6 && acc <= 1e-4 && centripetal <= 1e-12,
          fmt("velocity dev=%.3g (<=1e-6) accel dev=%.3g (<=1e-4) centripetal dev=%.3g (<=1e-12)", vel,
              acc, centripetal)};
}

int cli(const std::vector<std::string>& args, const cli::Hooks& hooks = {}) {
  std::ostringstream out, err;
  return cli::run(args, out, err, hooks);
}

Outcome cli_contract() {
  std::string detail;
  bool pass = true;
  for (const auto& doc : bundled_documents()) {
    const int code = cli({"check", "--model", doc.name, "--trials", "100", "--seed", "42"});
    detail += "check " + doc.name + "=" + std::to_string(code) + " ";
    pass &= code == 0;
  }
  cli::Hooks corrupt;
  corrupt.check_methods.jacobian_fast = [](const ETS& e, std::span<const double> q) {
    Jacobian j = jacobian_fast(e, q);
    j.col(0) *= 1.0 + 1e-6;
    return j;
  };
  const int negative = cli({"check", "--model", "planar2r", "--trials", "100", "--seed", "42"}, corrupt);
  detail += "corrupted=" + std::to_string(negative) + " (==1) ";
  pass &= negative == 1;

  const ETS p2 = bundled_model("planar2r").ets;
  const Mat4 target = fkine(p2, std::vector<double>{0.3, 0.4}).matrix();
  const IkResult ik = ik_dls(p2, target, std::vector<double>{0.2, 0.5}, {1e-8, 100, 1e-6});
  pass &= ik.converged && ik.residual <= 1e-8 && ik.iterations <= 100;
  detail += fmt("ik residual=%.3g (<=1e-8) iterations=%.0f (<=100)", ik.residual,
                static_cast<double>(ik.iterations));
  return {pass, detail};
}

}  // namespace
}  // namespace etskin

int main() {
  using namespace etskin;
  const auto pop = population();
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"jacobian oracle triangle", [&] { return jacobian_triangle(pop); }},
      {"hessian oracle triangle", [&] { return hessian_triangle(pop); }},
      {"hessian structure", [&] { return hessian_structure(pop); }},
      {"se3 invariants", [&] { return se3_invariants(pop); }},
      {"prismatic/revolute column structure", [&] { return column_structure(pop); }},
      {"dh equivalence", [] { return dh_equivalence(); }},
      {"twist maps", [&] { return twist_maps(pop); }},
      {"cli contract", [] { return cli_contract(); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

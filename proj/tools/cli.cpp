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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "etskin/control.hpp"
#include "etskin/diffkin.hpp"
#include "etskin/errors.hpp"
#include "etskin/robots.hpp"
#include "json.hpp"

namespace etskin::cli {
namespace {

namespace fs = std::filesystem;

// Numbers are written with 17 significant digits.
std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename Range>
std::string array(const Range& values) {
  std::string out = "[";
  bool first = true;
  for (double v : values) {
    if (!first) out += ", ";
    out += num(v);
    first = false;
  }
  return out + "]";
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string row_major(const Eigen::MatrixXd& m) {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
  }
  return array(flat);
}

std::vector<double> parse_csv(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size() || !std::isfinite(v)) {
      throw Error(flag + ": malformed number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open model file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A path on disk, or the name of a bundled model.
std::string model_document(const std::string& ref) {
  if (fs::exists(ref)) return read_file(ref);
  for (const auto& doc : bundled_documents()) {
    if (doc.name == ref) return doc.document;
  }
  throw SchemaError("model '" + ref + "' is neither a file nor a bundled model");
}

// Merge runs of same-axis constants and drop zero constants.
ETS fold_constants(const ETS& ets) {
  std::vector<ElementaryTransform> out;
  for (const auto& et : ets.transforms()) {
    if (!et.is_joint() && !out.empty() && !out.back().is_joint() && out.back().axis == et.axis) {
      std::get<Constant>(out.back().param).value += std::get<Constant>(et.param).value;
    } else {
      out.push_back(et);
    }
    if (!out.back().is_joint() && std::get<Constant>(out.back().param).value == 0.0) {
      out.pop_back();
    }
  }
  return ETS(std::move(out));
}

struct Args {
  std::string model;
  std::string q;
  std::string method = "fast";
  std::optional<double> h;
  std::string link;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  std::size_t max_iters = 100;
  double damping = 1e-6;
  double dt = 1e-3;
  std::size_t steps = 1;
  std::string twist;
  std::string target;
  std::string mask = "1,1,1,1,1,1";
  bool fold = false;
  std::string dir = ".";
};

std::vector<double> joint_values(const Args& a) { return parse_csv(a.q, "--q"); }

int cmd_fkine(const Args& a, std::ostream& out) {
  const RobotModel model = load_model_text(model_document(a.model));
  const std::vector<double> q = joint_values(a);
  Pose pose;
  if (a.link.empty()) {
    pose = fkine(model.ets, q);
  } else {
    const auto colon = a.link.find(':');
    if (colon == std::string::npos) throw Error("--link: expected A:B");
    std::size_t lo = 0, hi = 0;
    try {
      std::size_t used_lo = 0, used_hi = 0;
      lo = std::stoul(a.link.substr(0, colon), &used_lo);
      hi = std::stoul(a.link.substr(colon + 1), &used_hi);
      if (used_lo != colon || used_hi != a.link.size() - colon - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw Error("--link: expected A:B with non-negative integers");
    }
    pose = link_pose(model.ets, q, lo, hi);
  }
  out << "{\"T\": " << row_major(pose.matrix()) << "}\n";
  return kOk;
}

int cmd_jacobian(const Args& a, std::ostream& out) {
  const RobotModel model = load_model_text(model_document(a.model));
  const std::vector<double> q = joint_values(a);
  Jacobian jac;
  if (a.method == "fast") {
    jac = jacobian_fast(model.ets, q);
  } else if (a.method == "naive") {
    jac = jacobian_naive(model.ets, q);
  } else {
    jac = jacobian_fd(model.ets, q, a.h.value_or(1e-6));
  }
  out << "{\"method\": " << quoted(a.method) << ", \"shape\": [6, " << jac.cols()
      << "], \"J\": " << row_major(jac) << "}\n";
  return kOk;
}

int cmd_hessian(const Args& a, std::ostream& out) {
  const RobotModel model = load_model_text(model_document(a.model));
  const std::vector<double> q = joint_values(a);
  Hessian hess;
  if (a.method == "fast") {
    hess = hessian_fast(model.ets, q);
  } else if (a.method == "naive") {
    hess = hessian_naive(model.ets, q);
  } else {
    hess = hessian_fd(model.ets, q, a.h.value_or(1e-5));
  }
  out << "{\"method\": " << quoted(a.method) << ", \"shape\": [6, " << hess.n() << ", "
      << hess.n() << "], \"layout\": \"r,i,j\", \"H\": " << array(hess.data()) << "}\n";
  return kOk;
}

int cmd_check(const Args& a, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  const RobotModel model = load_model_text(model_document(a.model));
  const CheckReport report = run_check(model.ets, a.trials, a.seed, {}, hooks.check_methods);
  out << "{\"model\": " << quoted(model.name) << ", \"trials\": " << report.trials
      << ", \"seed\": " << report.seed << ", \"residuals\": {";
  for (std::size_t k = 0; k < report.residuals.size(); ++k) {
    const auto& r = report.residuals[k];
    out << (k ? ", " : "") << quoted(r.name) << ": {\"max\": " << num(r.max)
        << ", \"tol\": " << num(r.tol) << ", \"pass\": " << (r.pass() ? "true" : "false") << "}";
  }
  out << "}, \"pass\": " << (report.pass() ? "true" : "false") << "}\n";
  if (const auto bad = report.first_failure()) {
    err << "check failed: " << bad->name << " residual " << num(bad->max) << " exceeds "
        << num(bad->tol) << "\n";
    return kCheckFailed;
  }
  return kOk;
}

int cmd_ik(const Args& a, std::ostream& out, std::ostream& err) {
  const RobotModel model = load_model_text(model_document(a.model));
  std::vector<double> q0 = joint_values(a);
  if (a.q.empty()) q0.assign(model.ets.n(), 0.0);
  const std::vector<double> t = parse_csv(a.target, "--target");
  if (t.size() != 16) throw Error("--target: expected 16 comma-separated numbers (row-major)");
  Mat4 target;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) target(r, c) = t[static_cast<std::size_t>(4 * r + c)];
  }
  const IkResult res = ik_dls(model.ets, target, q0, {a.tol, a.max_iters, a.damping});
  out << "{\"q\": " << array(res.q) << ", \"iterations\": " << res.iterations
      << ", \"residual\": " << num(res.residual)
      << ", \"converged\": " << (res.converged ? "true" : "false") << "}\n";
  if (!res.converged) {
    err << "ik did not converge after " << res.iterations << " iterations; best residual "
        << num(res.residual) << "\n";
    return kNoConvergence;
  }
  return kOk;
}

int cmd_rrmc(const Args& a, std::ostream& out, std::ostream& err) {
  const RobotModel model = load_model_text(model_document(a.model));
  std::vector<double> q0 = joint_values(a);
  if (a.q.empty()) q0.assign(model.ets.n(), 0.0);
  const std::vector<double> nu = parse_csv(a.twist, "--twist");
  if (nu.size() != 6) throw Error("--twist: expected 6 comma-separated numbers (v; w)");
  const std::vector<double> mask = parse_csv(a.mask, "--mask");
  if (mask.size() != 6) throw Error("--mask: expected 6 comma-separated 0/1 flags");

  RrmcOptions opts;
  opts.dt = a.dt;
  opts.steps = a.steps;
  opts.damping = a.damping;
  for (std::size_t k = 0; k < 6; ++k) opts.mask[k] = mask[k] != 0.0;
  const RrmcResult res =
      rrmc(model.ets, q0, Twist6::from_vector(Eigen::Map<const Vec6>(nu.data())), opts);

  out << "{\"steps\": [";
  for (std::size_t k = 0; k < res.steps.size(); ++k) {
    const auto& s = res.steps[k];
    const Vec6 tw = s.realized.vector();
    out << (k ? ", " : "") << "{\"step\": " << k << ", \"q\": " << array(s.q)
        << ", \"qd\": " << array(s.qd)
        << ", \"twist\": " << array(std::vector<double>(tw.data(), tw.data() + 6)) << "}";
  }
  out << "]";
  if (res.singular_step) out << ", \"singular_step\": " << *res.singular_step;
  out << "}\n";
  if (res.singular_step) {
    err << "rrmc: Jacobian is singular at step " << *res.singular_step << "\n";
    return kSingular;
  }
  return kOk;
}

int cmd_dh2ets(const Args& a, std::ostream& out) {
  const std::string doc = model_document(a.model);
  ETS ets = dh_to_ets(load_dh_text(doc));
  if (a.fold) ets = fold_constants(ets);
  const std::string text = format_ets(ets);
  const auto name = nlohmann::json::parse(doc).at("name").get<std::string>();
  out << "{\"name\": " << quoted(name) << ", \"ets\": " << quoted(text) << "}\n";
  return kOk;
}

int cmd_models_export(const Args& a, std::ostream& out) {
  fs::create_directories(a.dir);
  out << "{\"exported\": [";
  bool first = true;
  for (const auto& doc : bundled_documents()) {
    const fs::path path = fs::path(a.dir) / (doc.name + ".json");
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    f << doc.document << "\n";
    out << (first ? "" : ", ") << quoted(path.string());
    first = false;
  }
  out << "]}\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Hooks& hooks) {
  CLI::App app{"Serial-manipulator kinematics from elementary transform sequences", "etskin"};
  // "-h" would collide with the finite-difference step option "--h".
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Args a;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", a.model, "Model document path or bundled model name")->required();
  };
  auto add_q = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--q", a.q, "Joint values, comma-separated radians/meters");
    if (required) opt->required();
  };
  auto add_method = [&](CLI::App* sub) {
    sub->add_option("--method", a.method, "fast | naive | fd")
        ->check(CLI::IsMember({"fast", "naive", "fd"}));
    sub->add_option("--h", a.h, "Finite-difference step")->check(CLI::PositiveNumber);
  };

  auto* fk = app.add_subcommand("fkine", "End-effector (or link range) pose");
  add_model(fk);
  add_q(fk, false);
  fk->add_option("--link", a.link, "Half-open sequence range A:B");

  auto* jac = app.add_subcommand("jacobian", "6 x n world-frame Jacobian");
  add_model(jac);
  add_q(jac, false);
  add_method(jac);

  auto* hes = app.add_subcommand("hessian", "6 x n x n world-frame Hessian");
  add_model(hes);
  add_q(hes, false);
  add_method(hes);

  auto* chk = app.add_subcommand("check", "Seeded oracle self-check");
  add_model(chk);
  chk->add_option("--trials", a.trials)->check(CLI::PositiveNumber);
  chk->add_option("--seed", a.seed);

  auto* ik = app.add_subcommand("ik", "Damped least-squares inverse kinematics");
  add_model(ik);
  add_q(ik, false);
  ik->add_option("--target", a.target, "Target pose, 16 numbers row-major")->required();
  ik->add_option("--tol", a.tol)->check(CLI::PositiveNumber);
  ik->add_option("--max-iters", a.max_iters);
  ik->add_option("--damping", a.damping)->check(CLI::NonNegativeNumber);

  auto* rr = app.add_subcommand("rrmc", "Resolved-rate motion control");
  add_model(rr);
  add_q(rr, false);
  rr->add_option("--twist", a.twist, "Desired twist v;w, 6 numbers")->required();
  rr->add_option("--dt", a.dt)->check(CLI::PositiveNumber);
  rr->add_option("--steps", a.steps)->check(CLI::PositiveNumber);
  rr->add_option("--damping", a.damping)->check(CLI::NonNegativeNumber);
  rr->add_option("--mask", a.mask, "Task rows as 6 0/1 flags");

  auto* dh = app.add_subcommand("dh2ets", "Convert a DH model document to ETS text");
  add_model(dh);
  dh->add_flag("--fold", a.fold, "Merge adjacent same-axis constants");

  auto* models = app.add_subcommand("models", "Bundled models");
  models->require_subcommand(1);
  auto* exp = models->add_subcommand("export", "Write bundled model documents to disk");
  exp->add_option("--dir", a.dir);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (fk->parsed()) return cmd_fkine(a, out);
    if (jac->parsed()) return cmd_jacobian(a, out);
    if (hes->parsed()) return cmd_hessian(a, out);
    if (chk->parsed()) return cmd_check(a, out, err, hooks);
    if (ik->parsed()) return cmd_ik(a, out, err);
    if (rr->parsed()) return cmd_rrmc(a, out, err);
    if (dh->parsed()) return cmd_dh2ets(a, out);
    if (exp->parsed()) return cmd_models_export(a, out);
  } catch (const DimensionMismatch& e) {
    err << "DimensionMismatch: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace etskin::cli

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

// Python extension: thin wrappers over the C++ library. Matrices leave as a
// flat row-major list of doubles plus a shape; the Python package reshapes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <string>
#include <tuple>
#include <vector>

#include "etskin/check.hpp"
#include "etskin/diffkin.hpp"
#include "etskin/errors.hpp"
#include "etskin/robots.hpp"

namespace py = pybind11;

namespace etskin {
namespace {

using Flat = std::tuple<std::vector<double>, std::vector<std::size_t>>;

Flat flatten(const Eigen::MatrixXd& m) {
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return {data, {static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())}};
}

Flat flatten_vector(const Vec6& v) { return {{v.data(), v.data() + 6}, {6}}; }

Flat py_fkine(const std::string& text, const std::vector<double>& q) {
  return flatten(fkine(parse_ets(text), q).matrix());
}

Flat py_jacobian(const std::string& text, const std::vector<double>& q, const std::string& method) {
  const ETS ets = parse_ets(text);
  if (method == "fast") return flatten(jacobian_fast(ets, q));
  if (method == "naive") return flatten(jacobian_naive(ets, q));
  if (method == "fd") return flatten(jacobian_fd(ets, q));
  throw Error("unknown method '" + method + "' (expected fast, naive or fd)");
}

Flat py_hessian(const std::string& text, const std::vector<double>& q, const std::string& method) {
  const ETS ets = parse_ets(text);
  Hessian h(ets.n());
  if (method == "fast") {
    h = hessian_fast(ets, q);
  } else if (method == "naive") {
    h = hessian_naive(ets, q);
  } else if (method == "fd") {
    h = hessian_fd(ets, q);
  } else {
    throw Error("unknown method '" + method + "' (expected fast, naive or fd)");
  }
  const auto d = h.data();
  return {std::vector<double>(d.begin(), d.end()), {6, h.n(), h.n()}};
}

py::dict py_load_model(const std::string& ref) {
  const RobotModel m =
      std::filesystem::exists(ref) ? load_model_file(ref) : bundled_model(ref);
  py::dict out;
  out["name"] = m.name;
  out["ets"] = format_ets(m.ets);
  out["n"] = m.ets.n();
  if (m.qlim) {
    out["qlim"] = *m.qlim;
  } else {
    out["qlim"] = py::none();
  }
  return out;
}

py::dict py_check(const std::string& text, std::size_t trials, std::uint64_t seed) {
  const CheckReport report = run_check(parse_ets(text), trials, seed);
  py::dict residuals;
  for (const auto& r : report.residuals) {
    py::dict entry;
    entry["max"] = r.max;
    entry["tol"] = r.tol;
    entry["pass"] = r.pass();
    residuals[py::str(r.name)] = entry;
  }
  py::dict out;
  out["trials"] = report.trials;
  out["seed"] = report.seed;
  out["pass"] = report.pass();
  out["residuals"] = residuals;
  return out;
}

}  // namespace
}  // namespace etskin

PYBIND11_MODULE(_etskin, m) {
  using namespace etskin;
  m.doc() = "Elementary-transform-sequence kinematics (native core)";
  py::register_exception<Error>(m, "EtskinError", PyExc_ValueError);

  m.def("parse_ets", [](const std::string& text) { return format_ets(parse_ets(text)); },
        py::arg("text"), "Parse ETS text and return its canonical form.");
  m.def("load_model", &py_load_model, py::arg("ref"),
        "Load a model document from a path or a bundled model name.");
  m.def("fkine", &py_fkine, py::arg("ets"), py::arg("q"));
  m.def("jacobian", &py_jacobian, py::arg("ets"), py::arg("q"), py::arg("method") = "fast");
  m.def("hessian", &py_hessian, py::arg("ets"), py::arg("q"), py::arg("method") = "fast");
  m.def("velocity_twist",
        [](const std::string& text, const std::vector<double>& q, const std::vector<double>& qd) {
          return flatten_vector(velocity_twist(parse_ets(text), q, qd).vector());
        },
        py::arg("ets"), py::arg("q"), py::arg("qd"));
  m.def("accel_twist",
        [](const std::string& text, const std::vector<double>& q, const std::vector<double>& qd,
           const std::vector<double>& qdd) {
          return flatten_vector(accel_twist(parse_ets(text), q, qd, qdd).vector());
        },
        py::arg("ets"), py::arg("q"), py::arg("qd"), py::arg("qdd"));
  m.def("check", &py_check, py::arg("ets"), py::arg("trials") = 100, py::arg("seed") = 42);
}

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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "etskin/diffkin.hpp"
#include "etskin/robots.hpp"
#include "json.hpp"

namespace etskin {
namespace {

using nlohmann::json;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

CliRun run(std::vector<std::string> args, const cli::Hooks& hooks = {}) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err, hooks);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<double> numbers(const json& arr) { return arr.get<std::vector<double>>(); }

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

TEST(CliFkine, Planar) {
  const CliRun r = run({"fkine", "--model", "planar2r", "--q", "0,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = numbers(r.doc()["T"]);
  ASSERT_EQ(t.size(), 16u);
  EXPECT_EQ(t[3], 2.0);
  EXPECT_EQ(t[7], 0.0);
  EXPECT_EQ(t[11], 0.0);
}

TEST(CliFkine, DimensionMismatch) {
  const CliRun r = run({"fkine", "--model", "planar2r", "--q", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("DimensionMismatch"), std::string::npos);
}

TEST(CliFkine, LinkRange) {
  const CliRun r = run({"fkine", "--model", "planar2r", "--q", "0.5,0.1", "--link", "0:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = numbers(r.doc()["T"]);
  const Mat4 expected = link_pose(bundled_model("planar2r").ets, std::vector<double>{0.5, 0.1}, 0, 2).matrix();
  for (int k = 0; k < 16; ++k) EXPECT_EQ(t[static_cast<std::size_t>(k)], expected(k / 4, k % 4));
  EXPECT_EQ(run({"fkine", "--model", "planar2r", "--q", "0,0", "--link", "3:1"}).code, 2);
  EXPECT_EQ(run({"fkine", "--model", "planar2r", "--q", "0,0", "--link", "x"}).code, 2);
}

// 17 significant digits survive a parse and re-evaluation exactly.
TEST(CliFkine, OutputIsBitStable) {
  const std::vector<double> q{0.123456789, -1.23456789, 2.5, -0.75, 0.3, 1.1, -0.2};
  std::string csv;
  for (double v : q) csv += (csv.empty() ? "" : ",") + std::to_string(v);
  const CliRun r = run({"fkine", "--model", "panda7", "--q", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = numbers(r.doc()["T"]);
  std::vector<double> qparsed;
  for (double v : q) qparsed.push_back(std::stod(std::to_string(v)));
  const Mat4 expected = fkine(bundled_model("panda7").ets, qparsed).matrix();
  for (int k = 0; k < 16; ++k) EXPECT_EQ(t[static_cast<std::size_t>(k)], expected(k / 4, k % 4));
}

TEST(CliJacobian, MethodsAgree) {
  const CliRun fast = run({"jacobian", "--model", "planar2r", "--q", "0,0", "--method", "fast"});
  const CliRun naive = run({"jacobian", "--model", "planar2r", "--q", "0,0", "--method", "naive"});
  const CliRun fd = run({"jacobian", "--model", "planar2r", "--q", "0,0", "--method", "fd", "--h", "1e-6"});
  ASSERT_EQ(fast.code, 0);
  ASSERT_EQ(naive.code, 0);
  ASSERT_EQ(fd.code, 0);
  const auto a = numbers(fast.doc()["J"]), b = numbers(naive.doc()["J"]), c = numbers(fd.doc()["J"]);
  ASSERT_EQ(a.size(), 12u);
  EXPECT_EQ(fast.doc()["shape"], json::array({6, 2}));
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_LE(std::abs(a[k] - b[k]), 1e-10);
    EXPECT_LE(std::abs(a[k] - c[k]), 1e-6);
  }
  EXPECT_EQ(run({"jacobian", "--model", "planar2r", "--q", "0,0", "--method", "bogus"}).code, 2);
  EXPECT_EQ(run({"jacobian", "--model", "nosuchmodel", "--q", "0,0"}).code, 2);
}

TEST(CliHessian, OneJointHasNoRotationalRows) {
  const auto path = write_temp("etskin_one_joint.json", R"j({"name":"one","ets":"tz(0.2) ry(q0) tx(0.7)"})j");
  for (const std::string method : {"fast", "naive", "fd"}) {
    const CliRun r = run({"hessian", "--model", path.string(), "--q", "0.4", "--method", method});
    ASSERT_EQ(r.code, 0) << r.err;
    const json doc = r.doc();
    EXPECT_EQ(doc["layout"], "r,i,j");
    const auto h = numbers(doc["H"]);
    ASSERT_EQ(h.size(), 6u);
    for (std::size_t k = 3; k < 6; ++k) EXPECT_LE(std::abs(h[k]), method == "fast" ? 0.0 : 1e-9);
  }
  std::filesystem::remove(path);
}

TEST(CliCheck, BundledModelsPass) {
  for (const auto& doc : bundled_documents()) {
    const CliRun r = run({"check", "--model", doc.name, "--trials", "100", "--seed", "42"});
    EXPECT_EQ(r.code, 0) << doc.name << ": " << r.err;
    EXPECT_TRUE(r.doc()["pass"].get<bool>());
  }
}

TEST(CliCheck, DeterministicOutput) {
  const CliRun a = run({"check", "--model", "mixed4", "--trials", "20", "--seed", "7"});
  const CliRun b = run({"check", "--model", "mixed4", "--trials", "20", "--seed", "7"});
  EXPECT_EQ(a.out, b.out);
}

TEST(CliCheck, CorruptedFixtureFails) {
  cli::Hooks hooks;
  hooks.check_methods.hessian_fast = [](const ETS& e, std::span<const double> q) {
    Hessian h = hessian_fast(e, q);
    h(0, 0, 0) *= 1.001;
    return h;
  };
  const CliRun r = run({"check", "--model", "planar2r", "--trials", "100", "--seed", "42"}, hooks);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("hessian_fast_vs_naive"), std::string::npos);
}

TEST(CliCheck, ZeroTrialsIsUsageError) {
  EXPECT_EQ(run({"check", "--model", "planar2r", "--trials", "0"}).code, 2);
}

std::string target_csv(const Mat4& t) {
  std::string out;
  char buf[32];
  for (int k = 0; k < 16; ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", t(k / 4, k % 4));
    out += (k ? "," : "") + std::string(buf);
  }
  return out;
}

TEST(CliIk, ReachableTarget) {
  const Mat4 target = fkine(bundled_model("planar2r").ets, std::vector<double>{0.3, 0.4}).matrix();
  const CliRun r = run({"ik", "--model", "planar2r", "--target", target_csv(target), "--q", "0.2,0.5",
                     "--tol", "1e-8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  EXPECT_LE(doc["residual"].get<double>(), 1e-8);
  EXPECT_LE(doc["iterations"].get<int>(), 100);
}

TEST(CliIk, AlreadySolvedAndUnreachable) {
  const Mat4 target = fkine(bundled_model("planar2r").ets, std::vector<double>{0.2, 0.5}).matrix();
  const CliRun r = run({"ik", "--model", "planar2r", "--target", target_csv(target), "--q", "0.2,0.5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["iterations"], 0);
  EXPECT_EQ(numbers(r.doc()["q"]), (std::vector<double>{0.2, 0.5}));

  Mat4 far = Mat4::Identity();
  far(0, 3) = 10.0;
  const CliRun bad = run({"ik", "--model", "planar2r", "--target", target_csv(far), "--q", "0.2,0.5"});
  EXPECT_EQ(bad.code, 3);
  EXPECT_FALSE(bad.doc()["converged"].get<bool>());
  EXPECT_EQ(run({"ik", "--model", "planar2r", "--target", "1,2,3"}).code, 2);
}

TEST(CliRrmc, Contract) {
  const CliRun still = run({"rrmc", "--model", "planar2r", "--q", "0.5,0.5", "--twist", "0,0,0,0,0,0",
                         "--steps", "4"});
  ASSERT_EQ(still.code, 0) << still.err;
  for (const auto& step : still.doc()["steps"]) EXPECT_EQ(numbers(step["q"]), (std::vector<double>{0.5, 0.5}));

  const CliRun moving = run({"rrmc", "--model", "planar2r", "--q", "0.5,0.5", "--twist",
                          "0.01,0,0,0,0,0", "--dt", "1e-3", "--steps", "10", "--mask", "1,1,0,0,0,0"});
  ASSERT_EQ(moving.code, 0) << moving.err;
  for (const auto& step : moving.doc()["steps"]) {
    const auto tw = numbers(step["twist"]);
    EXPECT_LE(std::abs(tw[0] - 0.01), 1e-4);
    EXPECT_LE(std::abs(tw[1]), 1e-4);
  }

  const CliRun singular = run({"rrmc", "--model", "planar2r", "--q", "0,0", "--twist", "0.01,0,0,0,0,0",
                            "--mask", "1,1,0,0,0,0", "--steps", "3"});
  EXPECT_EQ(singular.code, 4);
  EXPECT_NE(singular.err.find("step 0"), std::string::npos);
  EXPECT_EQ(run({"rrmc", "--model", "planar2r", "--twist", "0,0,0,0,0,0", "--dt", "0"}).code, 2);
}

TEST(CliDh2Ets, Conversions) {
  const auto single = write_temp(
      "etskin_dh1.json",
      R"j({"name":"l1","dh":{"convention":"standard","links":[{"theta":"q","d":0,"a":1,"alpha":0}]}})j");
  const CliRun r = run({"dh2ets", "--model", single.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["ets"], "rz(q0) tx(1)");

  const auto modified = write_temp(
      "etskin_dh2.json",
      R"j({"name":"m","dh":{"convention":"modified","links":[{"theta":"q","d":0.2,"a":0.5,"alpha":0.3}]}})j");
  const CliRun m = run({"dh2ets", "--model", modified.string()});
  EXPECT_EQ(m.doc()["ets"], "rx(0.3) tx(0.5) rz(q0) tz(0.2)");

  const CliRun panda = run({"dh2ets", "--model", "panda7_dh"});
  ASSERT_EQ(panda.code, 0);
  const std::string text = panda.doc()["ets"];
  EXPECT_EQ(parse_ets(text), bundled_model("panda7_dh").ets);
  EXPECT_EQ(run({"check", "--model", "panda7_dh", "--trials", "20"}).code, 0);

  const CliRun folded = run({"dh2ets", "--model", "panda7_dh", "--fold"});
  ASSERT_EQ(folded.code, 0);
  const ETS fe = parse_ets(folded.doc()["ets"].get<std::string>());
  EXPECT_EQ(fe.n(), 7u);

  EXPECT_EQ(run({"dh2ets", "--model", "planar2r"}).code, 2);  // not a DH document
  std::filesystem::remove(single);
  std::filesystem::remove(modified);
}

TEST(CliModels, ExportWritesLoadableDocuments) {
  const auto dir = std::filesystem::temp_directory_path() / "etskin_export_test";
  std::filesystem::remove_all(dir);
  const CliRun r = run({"models", "export", "--dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto paths = r.doc()["exported"];
  EXPECT_EQ(paths.size(), bundled_documents().size());
  for (const auto& p : paths) {
    EXPECT_NO_THROW(load_model_file(p.get<std::string>()));
  }
  std::filesystem::remove_all(dir);
}

TEST(CliUsage, Errors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"fkine"}).code, 2);
  EXPECT_EQ(run({"fkine", "--model", "planar2r", "--q", "0,abc"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace etskin

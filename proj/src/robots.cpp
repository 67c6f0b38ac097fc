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

#include "etskin/robots.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "etskin/errors.hpp"
#include "json.hpp"

namespace etskin {
namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& required,
                  const std::set<std::string>& optional, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected a JSON object");
  for (const auto& key : required) {
    if (!obj.contains(key)) throw SchemaError(where + ": missing required field '" + key + "'");
  }
  for (const auto& item : obj.items()) {
    if (!required.count(item.key()) && !optional.count(item.key())) {
      throw SchemaError(where + ": unexpected field '" + item.key() + "'");
    }
  }
}

double number_field(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw SchemaError(where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

bool is_variable(const json& v) { return v.is_string() && v.get<std::string>() == "q"; }

DhTable parse_dh(const json& dh) {
  require_keys(dh, {"convention", "links"}, {}, "dh");
  DhTable table;
  const json& conv = dh.at("convention");
  if (conv == "standard") {
    table.convention = DhConvention::Standard;
  } else if (conv == "modified") {
    table.convention = DhConvention::Modified;
  } else {
    throw SchemaError("dh: convention must be \"standard\" or \"modified\"");
  }
  const json& links = dh.at("links");
  if (!links.is_array() || links.empty()) {
    throw SchemaError("dh: links must be a non-empty array");
  }
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::string where = "dh.links[" + std::to_string(i) + "]";
    const json& l = links[i];
    require_keys(l, {"theta", "d", "a", "alpha"}, {"offset"}, where);
    const bool theta_var = is_variable(l.at("theta"));
    const bool d_var = is_variable(l.at("d"));
    if (theta_var == d_var) {
      throw SchemaError(where + ": exactly one of theta and d must be \"q\"");
    }
    DhLink link;
    link.kind = theta_var ? JointKind::Revolute : JointKind::Prismatic;
    if (!theta_var) link.theta = number_field(l, "theta", where);
    if (!d_var) link.d = number_field(l, "d", where);
    link.a = number_field(l, "a", where);
    link.alpha = number_field(l, "alpha", where);
    if (l.contains("offset")) link.offset = number_field(l, "offset", where);
    table.links.push_back(link);
  }
  return table;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("model document is not valid JSON: ") + e.what());
  }
}

}  // namespace

RobotModel load_model_text(std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) throw SchemaError("model: expected a JSON object");
  const bool has_ets = doc.contains("ets");
  const bool has_dh = doc.contains("dh");
  if (has_ets == has_dh) {
    throw SchemaError("model: exactly one of 'ets' and 'dh' is required");
  }
  require_keys(doc, {"name", has_ets ? "ets" : "dh"}, {"qlim"}, "model");
  if (!doc.at("name").is_string()) throw SchemaError("model: 'name' must be a string");

  RobotModel model;
  model.name = doc.at("name").get<std::string>();
  if (has_ets) {
    if (!doc.at("ets").is_string()) throw SchemaError("model: 'ets' must be a string");
    model.ets = parse_ets(doc.at("ets").get<std::string>());
  } else {
    model.ets = dh_to_ets(parse_dh(doc.at("dh")));
  }

  if (doc.contains("qlim")) {
    const json& qlim = doc.at("qlim");
    if (!qlim.is_array()) throw SchemaError("model: 'qlim' must be an array");
    if (qlim.size() != model.ets.n()) {
      throw LimitError("qlim has " + std::to_string(qlim.size()) + " entries but the model has " +
                       std::to_string(model.ets.n()) + " joints");
    }
    std::vector<std::pair<double, double>> limits;
    for (std::size_t j = 0; j < qlim.size(); ++j) {
      const json& pair = qlim[j];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw SchemaError("model: qlim[" + std::to_string(j) + "] must be [lo, hi]");
      }
      const double lo = pair[0].get<double>();
      const double hi = pair[1].get<double>();
      if (!(lo < hi)) {
        throw LimitError("qlim[" + std::to_string(j) + "]: lower limit must be below upper");
      }
      limits.emplace_back(lo, hi);
    }
    model.qlim = std::move(limits);
  }
  return model;
}

RobotModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open model file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model_text(ss.str());
}

DhTable load_dh_text(std::string_view json_text) {
  const json doc = parse_json(json_text);
  require_keys(doc, {"name", "dh"}, {"qlim"}, "model");
  return parse_dh(doc.at("dh"));
}

const std::vector<BundledModel>& bundled_documents() {
  static const std::vector<BundledModel> docs = {
      {"planar2r", R"json({"name": "planar2r", "ets": "rz(q0) tx(1) rz(q1) tx(1)"})json"},
      {"mixed4",
       R"json({"name": "mixed4",
  "ets": "tz(0.3) rz(q0) tx(0.4) tz(q1) ry(-q2) tx(0.25) ty(q3) rx(0.5) tz(0.1)",
  "qlim": [[-3.1, 3.1], [0.0, 0.5], [-2.0, 2.0], [-0.3, 0.3]]})json"},
      // Link offsets from the Franka Emika DH table; joints 4 and 6 turn about
      // the negative y axis.
      {"panda7",
       R"json({"name": "panda7",
  "ets": "tz(0.333) rz(q0) ry(q1) tz(0.316) rz(q2) tx(0.0825) ry(-q3) tx(-0.0825) tz(0.384) rz(q4) ry(-q5) tx(0.088) rx(3.141592653589793) tz(0.107) rz(q6)",
  "qlim": [[-2.8973, 2.8973], [-1.7628, 1.7628], [-2.8973, 2.8973], [-3.0718, -0.0698],
           [-2.8973, 2.8973], [-0.0175, 3.7525], [-2.8973, 2.8973]]})json"},
      {"panda7_dh",
       R"json({"name": "panda7_dh",
  "dh": {"convention": "modified", "links": [
    {"theta": "q", "d": 0.333, "a": 0.0, "alpha": 0.0},
    {"theta": "q", "d": 0.0, "a": 0.0, "alpha": -1.5707963267948966},
    {"theta": "q", "d": 0.316, "a": 0.0, "alpha": 1.5707963267948966},
    {"theta": "q", "d": 0.0, "a": 0.0825, "alpha": 1.5707963267948966},
    {"theta": "q", "d": 0.384, "a": -0.0825, "alpha": -1.5707963267948966},
    {"theta": "q", "d": 0.0, "a": 0.0, "alpha": 1.5707963267948966},
    {"theta": "q", "d": 0.0, "a": 0.088, "alpha": 1.5707963267948966}]},
  "qlim": [[-2.8973, 2.8973], [-1.7628, 1.7628], [-2.8973, 2.8973], [-3.0718, -0.0698],
           [-2.8973, 2.8973], [-0.0175, 3.7525], [-2.8973, 2.8973]]})json"},
  };
  return docs;
}

std::vector<RobotModel> bundled_models() {
  std::vector<RobotModel> out;
  for (const auto& doc : bundled_documents()) out.push_back(load_model_text(doc.document));
  return out;
}

RobotModel bundled_model(std::string_view name) {
  for (const auto& doc : bundled_documents()) {
    if (doc.name == name) return load_model_text(doc.document);
  }
  throw SchemaError("no bundled model named '" + std::string(name) + "'");
}

}  // namespace etskin

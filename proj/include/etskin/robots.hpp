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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "etskin/dh.hpp"
#include "etskin/ets.hpp"

namespace etskin {

struct RobotModel {
  std::string name;
  ETS ets;
  // Joint limits, metadata only.
  std::optional<std::vector<std::pair<double, double>>> qlim;
};

// Accepts either form:
//   {"name": str, "ets": str, "qlim": [[lo, hi], ...]?}
//   {"name": str, "dh": {"convention": "standard"|"modified",
//                        "links": [{"theta": num|"q", "d": num|"q",
//                                   "a": num, "alpha": num, "offset": num?}]},
//    "qlim": ...?}
// Throws SchemaError, ParseError or LimitError.
RobotModel load_model_text(std::string_view json_text);
RobotModel load_model_file(const std::filesystem::path& path);

// The DH table of a DH-form document (SchemaError for anything else).
DhTable load_dh_text(std::string_view json_text);

struct BundledModel {
  std::string name;
  std::string document;  // JSON model document
};

// planar2r, mixed4, panda7, panda7_dh.
const std::vector<BundledModel>& bundled_documents();
std::vector<RobotModel> bundled_models();
// Throws SchemaError if no bundled model has this name.
RobotModel bundled_model(std::string_view name);

}  // namespace etskin

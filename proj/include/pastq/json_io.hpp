// Copyright 2026 The pastq authors
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
//
// JSON (de)serialization for operators and POVMs.
//
// Operator schema:
//   {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}
// where `matrix` is row-major over the composite index with the first
// subsystem most significant, and every entry is a [real, imaginary] pair.
//
// POVM schema:
//   {"label": "...", "ops": [<operator>, ...]}

#pragma once

#include <string>

#include "json.hpp"

#include "pastq/errors.hpp"
#include "pastq/retrodiction.hpp"

namespace pastq {

nlohmann::json operator_to_json(const SubsystemOperator &op);

// Throws SchemaError naming the offending field on any shape violation.
SubsystemOperator operator_from_json(const nlohmann::json &j, const std::string &context = "");

nlohmann::json povm_to_json(const Povm &povm);

Povm povm_from_json(const nlohmann::json &j, const std::string &context = "");

// File wrappers; missing/unreadable/ill-formed files become SchemaError.
SubsystemOperator parse_operator_file(const std::string &path);
Povm parse_povm_file(const std::string &path);
void write_json_file(const std::string &path, const nlohmann::json &j);
nlohmann::json load_json_file(const std::string &path);

} // namespace pastq


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

#include "pastq/json_io.hpp"

#include <fstream>

namespace pastq {

namespace {

std::string where(const std::string &context, const std::string &field) {
    return context.empty() ? field : context + ": " + field;
}

} // namespace

nlohmann::json operator_to_json(const SubsystemOperator &op) {
    nlohmann::json j;
    j["dims"] = nlohmann::json::array();
    for (Index d : op.dims) {
        j["dims"].push_back(d);
    }
    nlohmann::json rows = nlohmann::json::array();
    for (Index r = 0; r < op.mat.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Index c = 0; c < op.mat.cols(); ++c) {
            row.push_back({op.mat(r, c).real(), op.mat(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    return j;
}

SubsystemOperator operator_from_json(const nlohmann::json &j, const std::string &context) {
    if (!j.is_object()) {
        throw SchemaError(where(context, "operator payload must be a JSON object"));
    }
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty()) {
        throw SchemaError(where(context, "\"dims\" must be a nonempty array"));
    }
    Dims dims;
    Index total = 1;
    for (std::size_t i = 0; i < j["dims"].size(); ++i) {
        const nlohmann::json &d = j["dims"][i];
        if (!d.is_number_integer() || d.get<long long>() < 1) {
            throw SchemaError(where(context, "\"dims\"[" + std::to_string(i) +
                                                 "] must be a positive integer"));
        }
        dims.push_back(Index(d.get<long long>()));
        total *= dims.back();
    }
    if (!j.contains("matrix") || !j["matrix"].is_array()) {
        throw SchemaError(where(context, "\"matrix\" must be an array of rows"));
    }
    if (Index(j["matrix"].size()) != total) {
        throw SchemaError(where(context, "\"matrix\" has " + std::to_string(j["matrix"].size()) +
                                             " rows but dims give " + std::to_string(total)));
    }
    Matrix mat(total, total);
    for (Index r = 0; r < total; ++r) {
        const nlohmann::json &row = j["matrix"][std::size_t(r)];
        if (!row.is_array() || Index(row.size()) != total) {
            throw SchemaError(where(context, "\"matrix\"[" + std::to_string(r) + "] must hold " +
                                                 std::to_string(total) + " entries"));
        }
        for (Index c = 0; c < total; ++c) {
            const nlohmann::json &entry = row[std::size_t(c)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number()) {
                throw SchemaError(where(context, "\"matrix\"[" + std::to_string(r) + "][" +
                                                     std::to_string(c) +
                                                     "] must be a [re, im] number pair"));
            }
            mat(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return make_operator(dims, std::move(mat));
}

nlohmann::json povm_to_json(const Povm &povm) {
    nlohmann::json j;
    j["label"] = povm.label;
    j["ops"] = nlohmann::json::array();
    for (const SubsystemOperator &op : povm.outcome_ops) {
        j["ops"].push_back(operator_to_json(op));
    }
    return j;
}

Povm povm_from_json(const nlohmann::json &j, const std::string &context) {
    if (!j.is_object()) {
        throw SchemaError(where(context, "POVM payload must be a JSON object"));
    }
    if (!j.contains("label") || !j["label"].is_string()) {
        throw SchemaError(where(context, "\"label\" must be a string"));
    }
    if (!j.contains("ops") || !j["ops"].is_array() || j["ops"].empty()) {
        throw SchemaError(where(context, "\"ops\" must be a nonempty array"));
    }
    std::vector<SubsystemOperator> ops;
    ops.reserve(j["ops"].size());
    for (std::size_t m = 0; m < j["ops"].size(); ++m) {
        ops.push_back(
            operator_from_json(j["ops"][m], where(context, "\"ops\"[" + std::to_string(m) + "]")));
    }
    return make_povm(j["label"].get<std::string>(), std::move(ops));
}

nlohmann::json load_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw SchemaError(path + ": cannot open file");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error &e) {
        throw SchemaError(path + ": " + e.what());
    }
    return j;
}

SubsystemOperator parse_operator_file(const std::string &path) {
    return operator_from_json(load_json_file(path), path);
}

Povm parse_povm_file(const std::string &path) {
    return povm_from_json(load_json_file(path), path);
}

void write_json_file(const std::string &path, const nlohmann::json &j) {
    std::ofstream out(path);
    if (!out) {
        throw SchemaError(path + ": cannot open file for writing");
    }
    out << j.dump(2) << "\n";
}

} // namespace pastq

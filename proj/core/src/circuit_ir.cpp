// Copyright 2026 The uctrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "uctrl/circuit_ir.hpp"

#include <fstream>
#include <numeric>

#include "uctrl/matrix_json.hpp"

namespace uctrl {

namespace {

using nlohmann::json;

json targets_json(const std::vector<std::size_t> &t) { return json(t); }

std::vector<std::size_t> read_targets(const json &j) {
    if (!j.is_array()) throw IrError("targets must be an array of factor indices");
    std::vector<std::size_t> t;
    for (const auto &e : j) {
        if (!e.is_number_integer() || e.get<long long>() < 0) throw IrError("targets must be non-negative integers");
        t.push_back(e.get<std::size_t>());
    }
    return t;
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw IrError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw IrError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

CMatrix read_matrix(const json &j, const std::filesystem::path &base_dir) {
    if (j.is_string()) {
        std::filesystem::path p = j.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        return matrix_from_json(read_json_file(p));
    }
    return matrix_from_json(j);
}

json letter_json(const QueryLetter &letter) {
    if (letter.name != "id" && letter.name != "inv") {
        throw IrError("query letter '" + letter.name + "' cannot be serialised");
    }
    return letter.name;
}

OracleAlgorithm parse(const json &j, const std::filesystem::path &base_dir) {
    const int d = j.at("d").get<int>();
    std::vector<Factor> factors;
    for (const auto &f : j.at("layout")) {
        factors.push_back({f.at("dim").get<int>(), role_from_string(f.at("role").get<std::string>()),
                           f.value("group", std::string{})});
    }
    RegisterLayout layout(std::move(factors));
    std::vector<std::size_t> all(layout.size());
    std::iota(all.begin(), all.end(), std::size_t{0});

    std::vector<Step> steps;
    for (const auto &s : j.at("steps")) {
        if (s.contains("query")) {
            steps.emplace_back(QueryStep{letter_from_name(s.at("query").get<std::string>()), read_targets(s.at("targets"))});
        } else if (s.contains("unitary")) {
            FixedGate gate{read_matrix(s.at("unitary"), base_dir), s.contains("targets") ? read_targets(s.at("targets")) : all,
                           std::nullopt};
            if (s.contains("control")) {
                const auto &c = s.at("control");
                gate.control = ControlSpec{c.at("factor").get<std::size_t>(), c.value("polarity", 1)};
            }
            steps.emplace_back(std::move(gate));
        } else {
            throw IrError("each step needs a \"unitary\" or a \"query\" field");
        }
    }

    Projector pi;
    if (j.contains("projector")) {
        const auto &p = j.at("projector");
        if (p.is_string() && p.get<std::string>() == "identity") {
            // identity
        } else if (p.is_object() && p.contains("matrix")) {
            pi = Projector{read_matrix(p.at("matrix"), base_dir), read_targets(p.at("targets"))};
        } else {
            pi = Projector{read_matrix(p, base_dir), all};
        }
    }

    std::optional<TaskRegisters> regs;
    if (j.contains("input_task") || j.contains("output_task")) {
        TaskRegisters r;
        r.input = read_targets(j.at("input_task"));
        r.output = j.contains("output_task") ? read_targets(j.at("output_task")) : r.input;
        regs = std::move(r);
    }
    return OracleAlgorithm(j.value("name", std::string{"unnamed"}), std::move(layout), d, std::move(steps),
                           std::move(pi), std::move(regs));
}

}  // namespace

json algorithm_to_json(const OracleAlgorithm &alg) {
    json layout = json::array();
    for (const auto &f : alg.layout().factors()) {
        json e{{"dim", f.dim}, {"role", to_string(f.role)}};
        if (!f.group.empty()) e["group"] = f.group;
        layout.push_back(std::move(e));
    }
    json steps = json::array();
    for (const auto &step : alg.steps()) {
        if (const auto *gate = std::get_if<FixedGate>(&step)) {
            json e{{"unitary", matrix_to_json(gate->op)}, {"targets", targets_json(gate->targets)}};
            if (gate->control) e["control"] = {{"factor", gate->control->factor}, {"polarity", gate->control->polarity}};
            steps.push_back(std::move(e));
        } else {
            const auto &q = std::get<QueryStep>(step);
            steps.push_back({{"query", letter_json(q.letter)}, {"targets", targets_json(q.targets)}});
        }
    }
    json projector = "identity";
    if (!alg.projector().is_identity()) {
        projector = {{"matrix", matrix_to_json(alg.projector().op)}, {"targets", targets_json(alg.projector().targets)}};
    }
    return {{"name", alg.name()},
            {"d", alg.oracle_dim()},
            {"layout", std::move(layout)},
            {"input_task", targets_json(alg.input_task())},
            {"output_task", targets_json(alg.output_task())},
            {"steps", std::move(steps)},
            {"projector", std::move(projector)}};
}

OracleAlgorithm algorithm_from_json(const json &j, const std::filesystem::path &base_dir) {
    try {
        return parse(j, base_dir);
    } catch (const json::exception &e) {
        throw IrError(std::string("malformed circuit: ") + e.what());
    }
}

void save_algorithm(const OracleAlgorithm &alg, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) throw IrError("cannot write '" + path.string() + "'");
    out << algorithm_to_json(alg).dump(1) << '\n';
}

OracleAlgorithm load_algorithm(const std::filesystem::path &path) {
    return algorithm_from_json(read_json_file(path), path.parent_path());
}

}  // namespace uctrl

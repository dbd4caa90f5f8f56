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

#ifndef UCTRL_CIRCUIT_IR_HPP
#define UCTRL_CIRCUIT_IR_HPP

#include <filesystem>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "uctrl/oracle_model.hpp"

namespace uctrl {

/// Malformed or unreadable circuit description.
class IrError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Serialises a program. Only id and inv letters can be written.
///
///   {"name": ..., "d": 2,
///    "layout": [{"dim": 2, "role": "control"}, {"dim": 2, "role": "task"}, ...],
///    "input_task": [0, 1], "output_task": [0, 1],
///    "steps": [{"unitary": M, "targets": [...], "control": {"factor": 0, "polarity": 0}},
///              {"query": "id", "targets": [1]}, ...],
///    "projector": "identity" | {"matrix": M, "targets": [...]}}
///
/// M is {"rows", "cols", "re", "im"}.
nlohmann::json algorithm_to_json(const OracleAlgorithm &alg);

/// Parses a program. Besides the written form, a unitary or projector may be
/// a path to a matrix file (resolved against `base_dir`), a unitary may omit
/// "targets" to act on the full space, and the projector may be an inline
/// full-space matrix.
OracleAlgorithm algorithm_from_json(const nlohmann::json &j, const std::filesystem::path &base_dir = {});

void save_algorithm(const OracleAlgorithm &alg, const std::filesystem::path &path);
OracleAlgorithm load_algorithm(const std::filesystem::path &path);

}  // namespace uctrl

#endif  // UCTRL_CIRCUIT_IR_HPP

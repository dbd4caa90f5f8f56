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

#ifndef UCTRL_MATRIX_JSON_HPP
#define UCTRL_MATRIX_JSON_HPP

#include <nlohmann/json.hpp>

#include "uctrl/linalg.hpp"

namespace uctrl {

// {"rows":n,"cols":m,"re":[[...]],"im":[[...]]}, rows outermost.
nlohmann::json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const nlohmann::json &j);

}  // namespace uctrl

#endif  // UCTRL_MATRIX_JSON_HPP

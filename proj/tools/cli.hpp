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

#ifndef UCTRL_TOOLS_CLI_HPP
#define UCTRL_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace uctrl::cli {

enum ExitCode : int {
    kPass = 0,
    kCheckFailed = 1,
    kModelViolation = 2,
    kInputError = 3,
};

/// Runs the command line `args` (program name first) and returns the exit
/// code. Reports go to `out` unless --out names a file; diagnostics go to
/// `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace uctrl::cli

#endif  // UCTRL_TOOLS_CLI_HPP

// Copyright 2026 The dblp Authors
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

// The dblp command-line tool: generate, solve, frontier, compare, evaluate.

#ifndef DBLP_TOOLS_CLI_H_
#define DBLP_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace dblp::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;       // bad flags, unreadable or malformed files
inline constexpr int kExitInfeasible = 3;  // no solution satisfies the constraints
inline constexpr int kExitInvalid = 4;     // a solution fails validation

// Runs one command. `args` excludes the program name. Human-readable output
// goes to `out`, errors to `err`; artifacts are written to --out paths.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace dblp::cli

#endif  // DBLP_TOOLS_CLI_H_

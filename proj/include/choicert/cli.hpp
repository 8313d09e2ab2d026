// Copyright 2026 The choicert Authors
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

#include <ostream>

namespace choicert {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitViolated = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitNotConverged = 4;

/// Entry point of `choicert`; commands verify-paper, certify, solve and search.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Tolerance from CHOICERT_TOL, or the library default.
double tolerance_from_env();

}  // namespace choicert

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

// JSON instance files and report serialization.
//
// Instance file layout:
//
//   {
//     "spaces": {"X": 2, "Y": 2, "Z": 2},
//     "rho":   [[[re, im], ...], ...],   // on [X, Z]
//     "sigma": [[[re, im], ...], ...],   // on [Z, Y]
//     "x":     [[[re, im], ...], ...]    // optional, on [X, Y]
//   }
//
// Matrices are row-major arrays of rows; the composite index puts the first
// listed factor most significant.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "choicert/certificate.hpp"
#include "choicert/paperbench.hpp"
#include "choicert/solver.hpp"

namespace choicert {

using Json = nlohmann::json;

struct InstanceFile {
  std::map<std::string, std::size_t> spaces;
  Matrix rho;
  Matrix sigma;
  std::optional<Matrix> x;
};

Json matrix_to_json(const Matrix& m);
/// Throws InputError unless `j` is an n x n array of [re, im] pairs.
Matrix matrix_from_json(const Json& j, std::size_t n, const std::string& what);

InstanceFile parse_instance(const Json& j);
InstanceFile parse_instance_text(const std::string& text);
InstanceFile read_instance(const std::filesystem::path& path);
Json to_json(const InstanceFile& f);
void write_json(const std::filesystem::path& path, const Json& j);

/// Builds the validated problem from a file (labels X, Y, Z).
ProblemInstance to_problem(const InstanceFile& f);
/// The file's x as an operator on [X, Y]; InputError when absent.
LabeledOperator file_choi(const InstanceFile& f);
InstanceFile to_instance_file(const ProblemInstance& inst, const std::optional<LabeledOperator>& x);

Json to_json(const LabeledOperator& op);
Json to_json(const CertificateReport& r);
Json to_json(const SolverResult& r);
Json to_json(const VerificationReport& r);
Json to_json(const SearchRecord& r);

}  // namespace choicert

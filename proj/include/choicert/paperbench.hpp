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

#include <cstdint>
#include <string>
#include <vector>

#include "choicert/certificate.hpp"
#include "choicert/solver.hpp"

namespace choicert {

/**
 * The two-qubit counterexample to the sign-function optimality certificate.
 *
 * All spaces are two dimensional. rho is the maximally entangled state on
 * [X, Z], so Psi_rho is half the relabeling X -> Z. Basis order for sigma is
 * [Z, Y] and for the channel [X, Y], both with the first factor major:
 *
 *     sigma = diag(0.55, 0.15, 0.20, 0.10)
 *     X     = diag(1,    0,    0.4,  0.6)
 */
struct PaperLiterals {
  std::vector<double> sigma_diag{0.55, 0.15, 0.20, 0.10};
  std::vector<double> x_diag{1.0, 0.0, 0.4, 0.6};
};

struct PaperCase {
  ProblemInstance instance;
  ChoiMatrix x;
};

/// rho = (1/d) sum_ij |i>_X|i>_Z <j|_X<j|_Z on [X, Z].
LabeledOperator maximally_entangled(std::size_t d, const std::string& x_label = "X",
                                    const std::string& z_label = "Z");

PaperCase paper_instance(const PaperLiterals& literals = {});

struct VerificationStage {
  std::string name;
  bool passed = false;
  double residual = 0.0;
};

struct VerificationReport {
  std::vector<VerificationStage> stages;
  double relabeling_residual = 0.0;
  double x_min_eigenvalue = 0.0;
  double x_tp_residual = 0.0;
  double objective_at_x = 0.0;
  double optimal_value_fast_path = 0.0;
  double optimal_value_solver = 0.0;
  bool solver_converged = false;
  double dual_certificate_value = 0.0;  ///< with Y* = diag(1, 1, -1, -1)
  double sign_candidate_value = 0.0;    ///< with Y = sign(Delta)
  CertificateReport certificate;
  bool theorem_confirmed = false;
  std::string failing_stage;  ///< empty when every stage passed
};

/// Replays the counterexample stage by stage against the displayed values.
VerificationReport verify_paper(const PaperLiterals& literals = {});

struct SearchRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::vector<double> sigma_diag;  ///< [Z, Y] order
  double optimal_value = 0.0;
  double dual_bound = 0.0;
  LabeledOperator x;               ///< first violating optimizer, else the canonical one
  bool satisfied = false;          ///< certificate verdict for x
  bool both_orders_fail = false;   ///< neither H >= lift nor lift >= H for x
  bool violation = false;
  int candidates = 0;
  int violating_candidates = 0;
};

struct SearchOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t dim_z = 2;
  std::size_t dim_y = 2;
};

/// Random diagonal sigma with the maximally entangled rho; trial 0 is the literal sigma for 2 x 2.
std::vector<SearchRecord> search(const SearchOptions& opts);

/// Re-runs certify and the dual bound on a stored record.
bool recheck_violation(const SearchRecord& rec, std::size_t dim_z, std::size_t dim_y);

}  // namespace choicert

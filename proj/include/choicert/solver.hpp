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
#include <optional>
#include <string>
#include <vector>

#include "choicert/certificate.hpp"

namespace choicert {

struct SolverOptions {
  int max_iters = 20000;
  double eps = 1e-7;           ///< relative primal-dual gap target
  int dykstra_iters = 500;
  int restarts = 1;            ///< restart k > 0 starts from random_channel(seed + k)
  std::uint64_t seed = 0;
  double step_scale = 0.99;    ///< tau * sigma * ||K||^2 = step_scale^2
  double step_ratio = 1.0;     ///< tau / sigma
  int check_every = 20;        ///< iterations between gap evaluations
  bool allow_fast_path = true; ///< dispatch diagonal instances to l1_fast_path
  bool random_start = false;   ///< first run starts from random_channel(seed), not 1/d_Y

  /// Throws std::invalid_argument unless every numeric field is positive.
  void validate() const;
};

enum class SolverMethod { kFirstOrder, kL1FastPath };
std::string to_string(SolverMethod m);

struct SolverResult {
  std::optional<ChoiMatrix> x_opt;
  double primal_value = 0.0;
  double dual_bound = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
  SolverMethod method = SolverMethod::kFirstOrder;
  std::optional<LabeledOperator> dual_certificate;  ///< the Y attaining dual_bound
};

// ---------------------------------------------------------------------------
// Projections onto the Choi spectrahedron {X >= 0, Tr_Y X = 1}

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
LabeledOperator project_psd(const LabeledOperator& a, double tol = kDefaultTolerance);
Matrix project_psd(const Matrix& a);

/// X - (1/d_Y) 1_Y (x) (Tr_Y X - 1): Frobenius projection onto {Tr_Y X = 1}.
LabeledOperator project_tp(const LabeledOperator& x, const std::string& y_label);

/// Dykstra alternating projections onto the channel set; `y_label` is the output factor.
ChoiMatrix project_choi(const LabeledOperator& x, const std::string& y_label,
                        const SolverOptions& opts = {});

// ---------------------------------------------------------------------------
// Closed form for diagonal sigma and Psi_rho = c * relabeling

/// Optimal set of one input block: x_y in [lower_y, upper_y] with sum_y x_y = 1.
struct L1Group {
  double value = 0.0;             ///< |sum_y sigma_(z,y) - c|
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> canonical;  ///< lower + lambda (upper - lower), summing to one
};

struct L1Solution {
  SolverResult result;
  double scale = 0.0;  ///< c
  std::vector<L1Group> groups;
};

/// Detects Psi_rho = c * relabeling (c > 0) from its superoperator matrix, or nullopt.
std::optional<double> relabeling_scale(const ProblemInstance& inst, double tol = 1e-10);

/// Exact minimizer of sum_k |sigma_k - c x_k| over diagonal channels; NotApplicableError otherwise.
L1Solution l1_fast_path(const ProblemInstance& inst);

/// Diagonal Choi matrix (canonical [X, Y] order) from per-group weights.
LabeledOperator diagonal_choi(const ProblemInstance& inst,
                              const std::vector<std::vector<double>>& weights);

// ---------------------------------------------------------------------------
// Dual bound

struct LinearMaxResult {
  double lower = 0.0;  ///< Tr(H X) at a feasible X
  double upper = 0.0;  ///< Tr(Lambda) with 1_Y (x) Lambda >= H
  int iterations = 0;
  bool exact = false;  ///< closed form (diagonal H)
  double value() const { return upper; }
};

/// max { Tr(H X) : X >= 0, Tr_Y X = 1 }; closed form when H is diagonal.
LinearMaxResult choi_linear_max(const LabeledOperator& h, const std::string& y_label);

/**
 * Iterative route for choi_linear_max, used on every non-diagonal H.
 *
 * Log-barrier Newton method on the dual  min Tr(Lambda) s.t. 1_Y (x) Lambda >= H.
 * Each centring step yields a certified bracket [lower, upper]; iteration stops
 * once upper - lower <= tol * (1 + ||H||_F). Throws ConvergenceError with the
 * bracket otherwise.
 */
LinearMaxResult choi_linear_max_iterative(const LabeledOperator& h, const std::string& y_label,
                                          double tol = 1e-9);

/// sum over non-Y indices of max_y H_{(.,y),(.,y)}; H must be diagonal.
double choi_linear_max_diagonal(const LabeledOperator& h, const std::string& y_label);

/// <Y, sigma> - max_X <(Id (x) Psi*)(Y), X>; requires ||Y||_op <= 1 + 1e-9.
double dual_bound(const ProblemInstance& inst, const LabeledOperator& y);

// ---------------------------------------------------------------------------

/// Primal-dual splitting for min ||sigma - (Id (x) Psi)(X)||_* over channels.
SolverResult solve_first_order(const ProblemInstance& inst, const SolverOptions& opts = {});

/// l1_fast_path when it applies and is allowed, solve_first_order otherwise.
SolverResult solve(const ProblemInstance& inst, const SolverOptions& opts = {});

}  // namespace choicert

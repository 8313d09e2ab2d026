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

#include <array>
#include <string>
#include <vector>

#include "choicert/labeled_operator.hpp"
#include "choicert/linalg.hpp"

namespace choicert {

/**
 * Diagonal sign-flip group on Z (x) Y for dim Z = dim Y = 2:
 *
 *     U = sum_ij u_ij |i>_Z|j>_Y <i|_Z<j|_Y,  u_ij in {-1, 1},  u00 u10 = u01 u11.
 *
 * Stored explicitly (8 elements). Conjugation by any element keeps sigma fixed
 * when sigma is diagonal and maps channels to channels, so averaging over the
 * group keeps optimality while killing every off-diagonal entry.
 */
struct SignGroup {
  std::string z_label;
  std::string y_label;
  std::vector<LabeledOperator> elements;
  /// Sign patterns (u00, u01, u10, u11), i.e. in [Z, Y] index order.
  std::vector<std::array<int, 4>> patterns;
};

SignGroup build_group(std::size_t dim_z, std::size_t dim_y, const std::string& z_label = "Z",
                      const std::string& y_label = "Y");

/// (1/|G|) sum_U U x U^dagger; x must act on the group's labels.
LabeledOperator symmetrize(const LabeledOperator& x, const SignGroup& g);

struct InvarianceBullets {
  bool preserves_psd = true;       ///< X >= 0  =>  U(X) >= 0
  bool preserves_marginal = true;  ///< Tr_Y X = 1  =>  Tr_Y U(X) = 1
  bool fixes_sigma = true;         ///< U(sigma) = sigma
  bool preserves_objective = true; ///< ||sigma - U(X)||_* = ||sigma - X||_*
  double max_deviation = 0.0;      ///< largest residual seen across bullets and elements
  bool all() const { return preserves_psd && preserves_marginal && fixes_sigma && preserves_objective; }
};

/// Checks each group element against the four invariance properties; sigma must be diagonal.
InvarianceBullets check_invariance_bullets(const LabeledOperator& x, const LabeledOperator& sigma,
                                           const SignGroup& g, double tol = 1e-10);

}  // namespace choicert

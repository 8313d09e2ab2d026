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

#include <functional>
#include <string>

#include "choicert/labeled_operator.hpp"

namespace choicert {

/// Relative tolerance used for Hermiticity and PSD decisions, scaled by (1 + ||A||_F).
inline constexpr double kDefaultTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Tensor structure

/// Kronecker product with labels [a.labels..., b.labels...].
LabeledOperator tensor(const LabeledOperator& a, const LabeledOperator& b);

/// Contracts the factor `label`; the remaining factors keep their order.
LabeledOperator partial_trace(const LabeledOperator& m, const std::string& label);

/// (1_s (x) m) with the identity factor placed so the result has label order `order`.
LabeledOperator embed_identity(const LabeledOperator& m, const Subsystem& s,
                               const std::vector<std::string>& order);

// ---------------------------------------------------------------------------
// Hermitian spectral calculus

struct HermitianCheck {
  double max_asymmetry = 0.0;  ///< ||A - A^dagger||_F
  bool is_hermitian = false;
};

HermitianCheck hermitian_check(const Matrix& a, double tol = kDefaultTolerance);
HermitianCheck hermitian_check(const LabeledOperator& a, double tol = kDefaultTolerance);

/// Eigenvalues in descending order; columns of `vectors` are the matching eigenvectors.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Matrix vectors;
  int sweeps = 0;
};

/**
 * Cyclic Jacobi eigensolver for a Hermitian matrix.
 *
 * Sweeps stop once the off-diagonal Frobenius mass drops below 1e-14 of the
 * total, or after 100 sweeps. Only the Hermitian part (A + A^dagger)/2 is
 * read; callers validate Hermiticity first.
 */
EigenDecomposition jacobi_eigh(const Matrix& a);

/// Throws NotHermitianError (carrying the asymmetry) on non-Hermitian input.
EigenDecomposition hermitian_eig(const LabeledOperator& a, double tol = kDefaultTolerance);

/// V f(Lambda) V^dagger for a Hermitian matrix.
Matrix spectral_fn(const Matrix& a, const std::function<double(double)>& f);
LabeledOperator spectral_fn(const LabeledOperator& a, const std::function<double(double)>& f,
                            double tol = kDefaultTolerance);

/// sign with sign(0) = 0.
inline double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// ---------------------------------------------------------------------------
// Norms and order

/// Sum of singular values.
double nuclear_norm(const LabeledOperator& a);
double nuclear_norm(const Matrix& a);

/// Largest singular value.
double operator_norm(const LabeledOperator& a);
double operator_norm(const Matrix& a);

enum class Ordering {
  kFirstDominates,   ///< a >= b only
  kSecondDominates,  ///< b >= a only
  kEqual,            ///< both
  kIncomparable,     ///< neither
};

std::string to_string(Ordering o);

struct OrderVerdict {
  Ordering ordering = Ordering::kIncomparable;
  double min_eigenvalue = 0.0;  ///< of a - b
  double max_eigenvalue = 0.0;  ///< of a - b

  bool first_dominates() const {
    return ordering == Ordering::kFirstDominates || ordering == Ordering::kEqual;
  }
  bool second_dominates() const {
    return ordering == Ordering::kSecondDominates || ordering == Ordering::kEqual;
  }
};

/// Loewner comparison of a and b from the spectrum of a - b; the threshold is tol * (1 + ||a-b||_F).
OrderVerdict psd_order(const LabeledOperator& a, const LabeledOperator& b,
                       double tol = kDefaultTolerance);

}  // namespace choicert

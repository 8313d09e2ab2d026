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

#include "choicert/labeled_operator.hpp"
#include "choicert/linalg.hpp"

namespace choicert {

/**
 * Choi matrix J(Phi) = sum_ik Phi(|i><k|) (x) |i><k| of a channel L(in) -> L(out).
 *
 * Only obtainable through choi_validate() (or random_channel()), so every
 * instance is PSD and satisfies Tr_out(J) = 1_in within tolerance. The label
 * order of the stored operator is free; all contractions go by name.
 */
class ChoiMatrix {
 public:
  const LabeledOperator& op() const noexcept { return op_; }
  const std::string& out_label() const noexcept { return out_label_; }
  const std::string& in_label() const noexcept { return in_label_; }
  std::size_t out_dim() const { return op_.dim_of(out_label_); }
  std::size_t in_dim() const { return op_.dim_of(in_label_); }

  /// Smallest eigenvalue of J at validation time.
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  /// ||Tr_out(J) - 1_in||_F at validation time.
  double tp_residual() const noexcept { return tp_residual_; }

 private:
  friend ChoiMatrix choi_validate(const LabeledOperator&, const std::string&,
                                  const std::string&, double);
  LabeledOperator op_;
  std::string out_label_;
  std::string in_label_;
  double min_eigenvalue_ = 0.0;
  double tp_residual_ = 0.0;
};

/// Checks complete positivity and trace preservation; throws ChoiError with the violation size.
ChoiMatrix choi_validate(const LabeledOperator& x, const std::string& out_label,
                         const std::string& in_label, double tol = kDefaultTolerance);

/// Phi(A) = Tr_in[(1_out (x) A^T) J(Phi)]; `a` must carry the input label.
LabeledOperator apply_choi(const ChoiMatrix& j, const LabeledOperator& a);

/**
 * Linear map L(in) -> L(out) stored as a d_out^2 x d_in^2 matrix.
 *
 * Operators are vectorized column-major in the matrix-unit basis: E_ij sits
 * at index j * d + i. Column (i, j) of the matrix is therefore vec(Psi(E_ij)).
 */
class SuperOperator {
 public:
  SuperOperator(Matrix matrix, Subsystem in, Subsystem out);

  const Matrix& matrix() const noexcept { return matrix_; }
  const Subsystem& in() const noexcept { return in_; }
  const Subsystem& out() const noexcept { return out_; }

  /// Psi(a) for a d_in x d_in matrix.
  Matrix apply(const Matrix& a) const;

  static SuperOperator identity(const Subsystem& in, const Subsystem& out);

 private:
  Matrix matrix_;
  Subsystem in_;
  Subsystem out_;
};

/// Column-major vectorization index of E_ij in dimension d.
inline Eigen::Index vec_index(std::size_t i, std::size_t j, std::size_t d) {
  return static_cast<Eigen::Index>(j * d + i);
}

/// Superoperator of the channel whose Choi matrix is `j`.
SuperOperator to_superoperator(const ChoiMatrix& j);

/**
 * Psi_rho for a density operator rho on [in_label, out_label].
 *
 * Psi_rho(E_ij) = Tr_in[rho (E_ji (x) 1_out)], the unique map with
 * (Phi (x) Id)(rho) = (Id (x) Psi_rho)(J(Phi)) for every Phi. The identity is
 * re-checked on a fixed random channel before returning.
 */
SuperOperator psi_from_rho(const LabeledOperator& rho, const std::string& in_label,
                           const std::string& out_label);

/// Hilbert-Schmidt adjoint: <Psi(A), B> = <A, Psi*(B)>.
SuperOperator adjoint(const SuperOperator& psi);

/// Applies psi to the factor `target` of m (identity elsewhere); target is renamed to psi.out().
LabeledOperator apply_on_factor(const SuperOperator& psi, const LabeledOperator& m,
                                const std::string& target);

/// Deterministic random channel: (1 (x) M^{-1/2}) G (1 (x) M^{-1/2}) with G = R^dagger R, M = Tr_out G.
ChoiMatrix random_channel(std::uint64_t seed, std::size_t d_in, std::size_t d_out,
                          const std::string& in_label = "X", const std::string& out_label = "Y");

/// Checks rho is Hermitian, PSD and unit trace; throws DensityError otherwise.
void require_density(const LabeledOperator& rho, double tol = kDefaultTolerance);

}  // namespace choicert

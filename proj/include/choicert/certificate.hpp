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

#include <string>

#include "choicert/labeled_operator.hpp"
#include "choicert/linalg.hpp"
#include "choicert/superop.hpp"

namespace choicert {

/**
 * Data of the channel fitting problem
 *
 *     min_Phi || sigma - (Phi (x) Id_Z)(rho) ||_*   over channels Phi: L(X) -> L(Y).
 *
 * rho lives on {X, Z} and sigma on {Y, Z}; the canonical order used when this
 * library builds operators itself is [X, Z] for rho, [Z, Y] for sigma and
 * [X, Y] for Choi matrices (input first, so X's index plays the role of Z's).
 */
class ProblemInstance {
 public:
  static ProblemInstance create(LabeledOperator rho, LabeledOperator sigma,
                                std::string x_label = "X", std::string y_label = "Y",
                                std::string z_label = "Z");

  const LabeledOperator& rho() const noexcept { return rho_; }
  const LabeledOperator& sigma() const noexcept { return sigma_; }
  const SuperOperator& psi() const noexcept { return psi_; }
  const std::string& x_label() const noexcept { return x_label_; }
  const std::string& y_label() const noexcept { return y_label_; }
  const std::string& z_label() const noexcept { return z_label_; }
  std::size_t dim_x() const { return rho_.dim_of(x_label_); }
  std::size_t dim_y() const { return sigma_.dim_of(y_label_); }
  std::size_t dim_z() const { return sigma_.dim_of(z_label_); }

  /// Labels of the Choi variable in canonical order [X, Y].
  Labels choi_labels() const { return {{x_label_, dim_x()}, {y_label_, dim_y()}}; }

 private:
  ProblemInstance(LabeledOperator rho, LabeledOperator sigma, SuperOperator psi,
                  std::string x, std::string y, std::string z);

  LabeledOperator rho_;
  LabeledOperator sigma_;
  SuperOperator psi_;
  std::string x_label_;
  std::string y_label_;
  std::string z_label_;
};

/// Validates that x is a channel X -> Y of the right dimensions for inst.
ChoiMatrix as_instance_choi(const ProblemInstance& inst, const LabeledOperator& x,
                            double tol = kDefaultTolerance);

/// (Id_Y (x) Psi_rho)(X), in sigma's label order.
LabeledOperator forward_map(const ProblemInstance& inst, const LabeledOperator& x);

/// Delta = sigma - (Id (x) Psi_rho)(X), labelled like sigma.
LabeledOperator residual(const ProblemInstance& inst, const ChoiMatrix& x);

/// ||sigma - (Id (x) Psi_rho)(X)||_* for any operator on the Choi labels (feasible or not).
double objective(const ProblemInstance& inst, const LabeledOperator& x);

/// Eigenvalues with |lambda| <= this * (1 + ||Delta||_F) are treated as exact zeros by dual_candidate.
inline constexpr double kSignZeroBand = 1e-12;

/// Y = sign(Delta) by spectral calculus, sign(0) = 0.
LabeledOperator dual_candidate(const LabeledOperator& delta);

/// H = (Id (x) Psi*)(Y); Psi* acts on psi.out() and the result carries psi.in() in its place.
LabeledOperator certificate_H(const SuperOperator& psi, const LabeledOperator& y);

struct CertificateReport {
  LabeledOperator delta;   ///< sigma - (Id (x) Psi)(X)
  LabeledOperator y;       ///< sign(delta)
  LabeledOperator h;       ///< (Id (x) Psi*)(y)
  LabeledOperator traced;  ///< Tr_Y(h x)
  LabeledOperator lift;    ///< 1_Y (x) traced, in h's label order
  HermitianCheck traced_hermitian;
  bool hermitian_ok = false;
  OrderVerdict forward_order;  ///< psd_order(h, lift)
  bool satisfied = false;      ///< hermitian_ok && h >= lift
  Eigen::VectorXd h_minus_lift_eigenvalues;  ///< descending
  Eigen::VectorXd h_eigenvalues;             ///< descending
};

/// Evaluates both conditions: Tr_Y(H X) Hermitian, and H >= 1_Y (x) Tr_Y(H X).
CertificateReport check_conditions(const LabeledOperator& h, const ChoiMatrix& x,
                                   double tol = kDefaultTolerance);

/// residual -> dual_candidate -> certificate_H -> check_conditions.
CertificateReport certify(const ProblemInstance& inst, const ChoiMatrix& x,
                          double tol = kDefaultTolerance);

}  // namespace choicert

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

#include "choicert/certificate.hpp"

#include <cmath>

#include "choicert/errors.hpp"

namespace choicert {

ProblemInstance::ProblemInstance(LabeledOperator rho, LabeledOperator sigma, SuperOperator psi,
                                 std::string x, std::string y, std::string z)
    : rho_(std::move(rho)),
      sigma_(std::move(sigma)),
      psi_(std::move(psi)),
      x_label_(std::move(x)),
      y_label_(std::move(y)),
      z_label_(std::move(z)) {}

ProblemInstance ProblemInstance::create(LabeledOperator rho, LabeledOperator sigma,
                                        std::string x_label, std::string y_label,
                                        std::string z_label) {
  if (x_label == y_label || y_label == z_label || x_label == z_label) {
    throw LabelError("space labels must be distinct");
  }
  if (rho.labels().size() != 2 || !rho.has_label(x_label) || !rho.has_label(z_label)) {
    throw LabelError("rho must act on exactly {" + x_label + ", " + z_label + "}");
  }
  if (sigma.labels().size() != 2 || !sigma.has_label(y_label) || !sigma.has_label(z_label)) {
    throw LabelError("sigma must act on exactly {" + z_label + ", " + y_label + "}");
  }
  if (rho.dim_of(z_label) != sigma.dim_of(z_label)) {
    throw DimensionError("rho and sigma disagree on dim(" + z_label + ")");
  }
  try {
    require_density(sigma);
  } catch (const DensityError& e) {
    throw DensityError(std::string("sigma: ") + e.what());
  }
  SuperOperator psi = [&] {
    try {
      return psi_from_rho(rho, x_label, z_label);
    } catch (const DensityError& e) {
      throw DensityError(std::string("rho: ") + e.what());
    }
  }();
  return ProblemInstance(std::move(rho), std::move(sigma), std::move(psi), std::move(x_label),
                         std::move(y_label), std::move(z_label));
}

ChoiMatrix as_instance_choi(const ProblemInstance& inst, const LabeledOperator& x, double tol) {
  if (!x.has_label(inst.x_label()) || !x.has_label(inst.y_label()) ||
      x.dim_of(inst.x_label()) != inst.dim_x() || x.dim_of(inst.y_label()) != inst.dim_y()) {
    throw DimensionError("Choi matrix does not act on " + inst.x_label() + " (x) " +
                         inst.y_label() + " with the instance dimensions");
  }
  return choi_validate(x, inst.y_label(), inst.x_label(), tol);
}

LabeledOperator forward_map(const ProblemInstance& inst, const LabeledOperator& x) {
  return apply_on_factor(inst.psi(), x, inst.x_label()).aligned_to(inst.sigma());
}

LabeledOperator residual(const ProblemInstance& inst, const ChoiMatrix& x) {
  if (x.in_label() != inst.x_label() || x.out_label() != inst.y_label()) {
    throw LabelError("residual: Choi matrix labels do not match the instance");
  }
  if (x.in_dim() != inst.dim_x() || x.out_dim() != inst.dim_y()) {
    throw DimensionError("residual: Choi matrix dimensions do not match the instance");
  }
  return inst.sigma() - forward_map(inst, x.op());
}

double objective(const ProblemInstance& inst, const LabeledOperator& x) {
  return nuclear_norm(inst.sigma() - forward_map(inst, x));
}

LabeledOperator dual_candidate(const LabeledOperator& delta) {
  const double band = kSignZeroBand * (1.0 + delta.frobenius_norm());
  return spectral_fn(delta, [band](double v) { return std::abs(v) <= band ? 0.0 : sign_of(v); });
}

LabeledOperator certificate_H(const SuperOperator& psi, const LabeledOperator& y) {
  return apply_on_factor(adjoint(psi), y, psi.out().name);
}

CertificateReport check_conditions(const LabeledOperator& h, const ChoiMatrix& x, double tol) {
  if (!h.same_space(x.op())) {
    throw LabelError("check_conditions: H and X act on different spaces");
  }
  CertificateReport rep;
  rep.h = h;
  rep.traced = partial_trace(product(h, x.op()), x.out_label());
  rep.lift = embed_identity(rep.traced, {x.out_label(), x.out_dim()}, h.label_names());
  rep.traced_hermitian = hermitian_check(rep.traced, tol);
  rep.hermitian_ok = rep.traced_hermitian.is_hermitian;

  // The order test needs a Hermitian difference; compare against the Hermitian part of the
  // lift when the trace condition already failed, so the report stays informative.
  const LabeledOperator lift_h(0.5 * (rep.lift.matrix() + rep.lift.matrix().adjoint()), rep.lift.labels());
  const LabeledOperator h_h(0.5 * (h.matrix() + h.matrix().adjoint()), h.labels());
  rep.forward_order = psd_order(h_h, lift_h, tol);
  rep.h_minus_lift_eigenvalues = jacobi_eigh((h_h - lift_h).matrix()).values;
  rep.h_eigenvalues = jacobi_eigh(h_h.matrix()).values;
  rep.satisfied = rep.hermitian_ok && rep.forward_order.first_dominates();
  return rep;
}

CertificateReport certify(const ProblemInstance& inst, const ChoiMatrix& x, double tol) {
  LabeledOperator delta = residual(inst, x);
  LabeledOperator y = dual_candidate(delta);
  LabeledOperator h = certificate_H(inst.psi(), y).aligned_to(x.op());
  CertificateReport rep = check_conditions(h, x, tol);
  rep.delta = std::move(delta);
  rep.y = std::move(y);
  return rep;
}

}  // namespace choicert

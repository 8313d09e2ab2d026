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

#include "choicert/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "choicert/errors.hpp"

namespace choicert {

namespace {

LabeledOperator conjugate(const LabeledOperator& u, const LabeledOperator& x) {
  return product(product(u, x), u.adjoint());
}

}  // namespace

SignGroup build_group(std::size_t dim_z, std::size_t dim_y, const std::string& z_label,
                      const std::string& y_label) {
  if (dim_z != 2 || dim_y != 2) {
    throw DimensionError("build_group: the sign group is only defined for dim Z = dim Y = 2");
  }
  SignGroup g;
  g.z_label = z_label;
  g.y_label = y_label;
  const Labels labels{{z_label, 2}, {y_label, 2}};
  for (int mask = 0; mask < 16; ++mask) {
    // index z * 2 + y  ->  u_zy
    std::array<int, 4> u{};
    for (int k = 0; k < 4; ++k) u[static_cast<std::size_t>(k)] = (mask >> k) & 1 ? -1 : 1;
    const int u00 = u[0], u01 = u[1], u10 = u[2], u11 = u[3];
    if (u00 * u10 != u01 * u11) continue;
    g.patterns.push_back(u);
    g.elements.push_back(LabeledOperator::diagonal(labels, {double(u00), double(u01), double(u10), double(u11)}));
  }
  return g;
}

LabeledOperator symmetrize(const LabeledOperator& x, const SignGroup& g) {
  if (g.elements.empty()) throw Error("symmetrize: empty group");
  if (!x.same_space(g.elements.front())) {
    throw DimensionError("symmetrize: operator must act on " + g.z_label + " (x) " + g.y_label +
                         " with dimensions 2 x 2");
  }
  // Every element is a diagonal sign matrix, so U X U^dagger = (u u^T) o X. Summing the
  // integer character table first keeps fixed entries bit-exact.
  const auto n = static_cast<Eigen::Index>(x.dim());
  Eigen::MatrixXd weight = Eigen::MatrixXd::Zero(n, n);
  for (const auto& u : g.elements) {
    const Eigen::VectorXd d = u.aligned_to(x).matrix().diagonal().real();
    weight += d * d.transpose();
  }
  weight /= static_cast<double>(g.elements.size());
  return LabeledOperator(x.matrix().cwiseProduct(weight.cast<Complex>()), x.labels());
}

InvarianceBullets check_invariance_bullets(const LabeledOperator& x, const LabeledOperator& sigma,
                                           const SignGroup& g, double tol) {
  if (!sigma.is_diagonal()) {
    throw Error("check_invariance_bullets: sigma must be diagonal");
  }
  if (g.elements.empty() || !x.same_space(g.elements.front()) || !sigma.same_space(x)) {
    throw DimensionError("check_invariance_bullets: operators must act on the group's space");
  }
  InvarianceBullets out;
  const double scale = 1.0 + x.frobenius_norm();
  const bool herm = hermitian_check(x).is_hermitian;
  const bool x_psd = herm && jacobi_eigh(x.matrix()).values.minCoeff() >= -tol * scale;
  const LabeledOperator marginal = partial_trace(x, g.y_label);
  const bool x_tp =
      (marginal.matrix() - Matrix::Identity(marginal.dim(), marginal.dim())).norm() <= tol * scale;
  const double base_obj = nuclear_norm(sigma - x);

  auto note = [&](double dev) { out.max_deviation = std::max(out.max_deviation, dev); };
  for (const auto& u : g.elements) {
    const LabeledOperator ux = conjugate(u, x);
    if (x_psd) {
      const double min_eig = jacobi_eigh(0.5 * (ux.matrix() + ux.matrix().adjoint())).values.minCoeff();
      note(std::max(0.0, -min_eig));
      out.preserves_psd = out.preserves_psd && min_eig >= -tol * scale;
    }
    if (x_tp) {
      const LabeledOperator m = partial_trace(ux, g.y_label);
      const double dev = (m.matrix() - Matrix::Identity(m.dim(), m.dim())).norm();
      note(dev);
      out.preserves_marginal = out.preserves_marginal && dev <= tol * scale;
    }
    const double sdev = distance(conjugate(u, sigma), sigma);
    note(sdev);
    out.fixes_sigma = out.fixes_sigma && sdev <= tol;
    const double odev = std::abs(nuclear_norm(sigma - ux) - base_obj);
    note(odev);
    out.preserves_objective = out.preserves_objective && odev <= tol * (1.0 + base_obj);
  }
  return out;
}

}  // namespace choicert

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

#include "choicert/superop.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "choicert/errors.hpp"

namespace choicert {

namespace {

constexpr std::uint64_t kPsiSelfCheckSeed = 0x5eed0f11ULL;
constexpr int kRandomChannelRetries = 16;
constexpr double kInverseSqrtFloor = 1e-12;

}  // namespace

void require_density(const LabeledOperator& rho, double tol) {
  const auto herm = hermitian_check(rho, tol);
  if (!herm.is_hermitian) {
    throw DensityError("density operator is not Hermitian (asymmetry " +
                       std::to_string(herm.max_asymmetry) + ")");
  }
  const auto eig = jacobi_eigh(rho.matrix());
  const double min_eig = eig.values(eig.values.size() - 1);
  if (min_eig < -tol * (1.0 + rho.frobenius_norm())) {
    throw DensityError("density operator is not PSD (min eigenvalue " + std::to_string(min_eig) + ")");
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    throw DensityError("density operator has trace " + std::to_string(tr));
  }
}

ChoiMatrix choi_validate(const LabeledOperator& x, const std::string& out_label,
                         const std::string& in_label, double tol) {
  if (x.labels().size() != 2 || !x.has_label(out_label) || !x.has_label(in_label) ||
      out_label == in_label) {
    throw LabelError("Choi matrix must carry exactly the labels '" + out_label + "' and '" +
                     in_label + "'");
  }
  const double scale = 1.0 + x.frobenius_norm();
  const auto herm = hermitian_check(x, tol);
  if (!herm.is_hermitian) {
    throw ChoiError("Choi matrix is not Hermitian", ChoiError::Kind::kNotHermitian,
                    herm.max_asymmetry);
  }
  const auto eig = jacobi_eigh(x.matrix());
  const double min_eig = eig.values(eig.values.size() - 1);
  if (min_eig < -tol * scale) {
    throw ChoiError("Choi matrix is not positive semidefinite (min eigenvalue " +
                        std::to_string(min_eig) + ")",
                    ChoiError::Kind::kNotPositive, -min_eig);
  }
  const LabeledOperator marginal = partial_trace(x, out_label);
  const double tp = (marginal.matrix() - Matrix::Identity(marginal.dim(), marginal.dim())).norm();
  if (tp > tol * scale) {
    throw ChoiError("Choi matrix is not trace preserving (||Tr_out J - 1||_F = " +
                        std::to_string(tp) + ")",
                    ChoiError::Kind::kNotTracePreserving, tp);
  }
  ChoiMatrix j;
  j.op_ = x;
  j.out_label_ = out_label;
  j.in_label_ = in_label;
  j.min_eigenvalue_ = min_eig;
  j.tp_residual_ = tp;
  return j;
}

LabeledOperator apply_choi(const ChoiMatrix& j, const LabeledOperator& a) {
  if (a.labels().size() != 1 || a.labels()[0].name != j.in_label()) {
    throw LabelError("apply_choi: operand must act on '" + j.in_label() + "' only");
  }
  if (a.dim() != j.in_dim()) throw DimensionError("apply_choi: input dimension mismatch");
  const LabeledOperator a_t(a.matrix().transpose(), a.labels());
  const Subsystem out{j.out_label(), j.out_dim()};
  const LabeledOperator lifted = embed_identity(a_t, out, j.op().label_names());
  return partial_trace(product(lifted, j.op()), j.in_label());
}

SuperOperator::SuperOperator(Matrix matrix, Subsystem in, Subsystem out)
    : matrix_(std::move(matrix)), in_(std::move(in)), out_(std::move(out)) {
  if (static_cast<std::size_t>(matrix_.rows()) != out_.dim * out_.dim ||
      static_cast<std::size_t>(matrix_.cols()) != in_.dim * in_.dim) {
    throw DimensionError("superoperator matrix must be d_out^2 x d_in^2");
  }
}

Matrix SuperOperator::apply(const Matrix& a) const {
  const auto din = static_cast<Eigen::Index>(in_.dim);
  const auto dout = static_cast<Eigen::Index>(out_.dim);
  if (a.rows() != din || a.cols() != din) throw DimensionError("superoperator input size mismatch");
  // Eigen storage is column-major, matching vec_index().
  const Eigen::Map<const Eigen::VectorXcd> vec(a.data(), din * din);
  Eigen::VectorXcd image = matrix_ * vec;
  return Eigen::Map<Matrix>(image.data(), dout, dout);
}

SuperOperator SuperOperator::identity(const Subsystem& in, const Subsystem& out) {
  if (in.dim != out.dim) throw DimensionError("identity superoperator needs equal dimensions");
  const auto n = static_cast<Eigen::Index>(in.dim * in.dim);
  return SuperOperator(Matrix::Identity(n, n), in, out);
}

SuperOperator to_superoperator(const ChoiMatrix& j) {
  const std::size_t din = j.in_dim();
  const std::size_t dout = j.out_dim();
  const LabeledOperator jo = j.op().permuted({j.out_label(), j.in_label()});
  Matrix s(static_cast<Eigen::Index>(dout * dout), static_cast<Eigen::Index>(din * din));
  for (std::size_t i = 0; i < din; ++i) {
    for (std::size_t jj = 0; jj < din; ++jj) {
      for (std::size_t k = 0; k < dout; ++k) {
        for (std::size_t l = 0; l < dout; ++l) {
          // Phi(E_ij)_kl = <k,i| J |l,j>
          s(vec_index(k, l, dout), vec_index(i, jj, din)) =
              jo.matrix()(static_cast<Eigen::Index>(k * din + i), static_cast<Eigen::Index>(l * din + jj));
        }
      }
    }
  }
  return SuperOperator(std::move(s), {j.in_label(), din}, {j.out_label(), dout});
}

SuperOperator psi_from_rho(const LabeledOperator& rho, const std::string& in_label,
                           const std::string& out_label) {
  if (rho.labels().size() != 2 || !rho.has_label(in_label) || !rho.has_label(out_label) ||
      in_label == out_label) {
    throw LabelError("rho must act on exactly '" + in_label + "' and '" + out_label + "'");
  }
  require_density(rho);
  const std::size_t din = rho.dim_of(in_label);
  const std::size_t dout = rho.dim_of(out_label);
  const LabeledOperator r = rho.permuted({in_label, out_label});

  Matrix s(static_cast<Eigen::Index>(dout * dout), static_cast<Eigen::Index>(din * din));
  for (std::size_t i = 0; i < din; ++i) {
    for (std::size_t j = 0; j < din; ++j) {
      for (std::size_t k = 0; k < dout; ++k) {
        for (std::size_t l = 0; l < dout; ++l) {
          // Tr_in[rho (E_ji (x) 1)]_kl = <i,k| rho |j,l>
          s(vec_index(k, l, dout), vec_index(i, j, din)) =
              r.matrix()(static_cast<Eigen::Index>(i * dout + k), static_cast<Eigen::Index>(j * dout + l));
        }
      }
    }
  }
  SuperOperator psi(std::move(s), {in_label, din}, {out_label, dout});

  // (Phi (x) Id)(rho) == (Id (x) Psi)(J(Phi)) on one fixed random channel.
  const std::string probe_out = "__probe_" + in_label + "_" + out_label;
  const ChoiMatrix probe = random_channel(kPsiSelfCheckSeed, din, 2, in_label, probe_out);
  const LabeledOperator lhs = apply_on_factor(to_superoperator(probe), rho, in_label);
  const LabeledOperator rhs = apply_on_factor(psi, probe.op(), in_label);
  const double err = distance(lhs, rhs);
  if (err > 1e-11 * (1.0 + lhs.frobenius_norm())) {
    throw Error("psi_from_rho: defining identity violated by " + std::to_string(err));
  }
  return psi;
}

SuperOperator adjoint(const SuperOperator& psi) {
  // The matrix-unit basis is orthonormal for <A,B> = Tr(A^dagger B).
  return SuperOperator(psi.matrix().adjoint(), psi.out(), psi.in());
}

LabeledOperator apply_on_factor(const SuperOperator& psi, const LabeledOperator& m,
                                const std::string& target) {
  const std::size_t pos = m.position_of(target);
  if (m.labels()[pos].dim != psi.in().dim) {
    throw DimensionError("apply_on_factor: factor '" + target + "' has dimension " +
                         std::to_string(m.labels()[pos].dim) + ", superoperator expects " +
                         std::to_string(psi.in().dim));
  }
  if (psi.out().name != target && m.has_label(psi.out().name)) {
    throw LabelError("apply_on_factor: output label '" + psi.out().name + "' already present");
  }

  std::vector<std::string> moved_order;
  Labels rest;
  for (std::size_t k = 0; k < m.labels().size(); ++k) {
    if (k == pos) continue;
    moved_order.push_back(m.labels()[k].name);
    rest.push_back(m.labels()[k]);
  }
  moved_order.push_back(target);
  const LabeledOperator moved = m.permuted(moved_order);

  const auto din = static_cast<Eigen::Index>(psi.in().dim);
  const auto dout = static_cast<Eigen::Index>(psi.out().dim);
  const Eigen::Index blocks = static_cast<Eigen::Index>(m.dim()) / din;
  Matrix out(blocks * dout, blocks * dout);
  for (Eigen::Index r = 0; r < blocks; ++r) {
    for (Eigen::Index c = 0; c < blocks; ++c) {
      out.block(r * dout, c * dout, dout, dout) = psi.apply(moved.matrix().block(r * din, c * din, din, din));
    }
  }

  Labels out_labels = rest;
  out_labels.push_back(psi.out());
  std::vector<std::string> final_order = m.label_names();
  final_order[pos] = psi.out().name;
  return LabeledOperator(std::move(out), std::move(out_labels)).permuted(final_order);
}

ChoiMatrix random_channel(std::uint64_t seed, std::size_t d_in, std::size_t d_out,
                          const std::string& in_label, const std::string& out_label) {
  if (d_in == 0 || d_out == 0) throw DimensionError("random_channel: dimensions must be >= 1");
  const auto n = static_cast<Eigen::Index>(d_in * d_out);
  const Labels labels{{out_label, d_out}, {in_label, d_in}};

  for (int attempt = 0; attempt < kRandomChannelRetries; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix r(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
      for (Eigen::Index k = 0; k < n; ++k) {
        const double re = normal(rng);
        const double im = normal(rng);
        r(k, c) = Complex(re, im);
      }
    }
    const LabeledOperator g(r.adjoint() * r, labels);
    const LabeledOperator marginal = partial_trace(g, out_label);
    const auto eig = jacobi_eigh(marginal.matrix());
    if (eig.values(eig.values.size() - 1) < kInverseSqrtFloor) continue;

    const LabeledOperator inv_sqrt(
        spectral_fn(marginal.matrix(),
                    [](double v) { return 1.0 / std::sqrt(std::max(v, kInverseSqrtFloor)); }),
        marginal.labels());
    const LabeledOperator k = embed_identity(inv_sqrt, {out_label, d_out}, g.label_names());
    LabeledOperator x = product(product(k, g), k);
    // Remove the rounding-level anti-Hermitian part left by the two products.
    x = LabeledOperator(0.5 * (x.matrix() + x.matrix().adjoint()), x.labels());
    return choi_validate(x, out_label, in_label);
  }
  throw Error("random_channel: could not draw a non-singular marginal");
}

}  // namespace choicert

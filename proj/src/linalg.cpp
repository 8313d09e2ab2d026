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

#include "choicert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "choicert/errors.hpp"

namespace choicert {

namespace {

constexpr double kJacobiThreshold = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r != c) s += std::norm(a(r, c));
    }
  }
  return std::sqrt(s);
}

void require_hermitian(const LabeledOperator& a, double tol, const char* who) {
  const auto check = hermitian_check(a, tol);
  if (!check.is_hermitian) {
    throw NotHermitianError(std::string(who) + ": operator is not Hermitian (asymmetry " +
                                std::to_string(check.max_asymmetry) + ")",
                            check.max_asymmetry);
  }
}

}  // namespace

LabeledOperator tensor(const LabeledOperator& a, const LabeledOperator& b) {
  Labels labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  space_dim(labels);  // label-collision check

  const Eigen::Index na = a.matrix().rows();
  const Eigen::Index nb = b.matrix().rows();
  Matrix out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
    }
  }
  return LabeledOperator(std::move(out), std::move(labels));
}

LabeledOperator partial_trace(const LabeledOperator& m, const std::string& label) {
  const std::size_t pos = m.position_of(label);
  std::vector<std::string> order;
  Labels rest;
  for (std::size_t k = 0; k < m.labels().size(); ++k) {
    if (k == pos) continue;
    order.push_back(m.labels()[k].name);
    rest.push_back(m.labels()[k]);
  }
  order.push_back(label);
  const LabeledOperator moved = m.permuted(order);

  const auto d = static_cast<Eigen::Index>(m.labels()[pos].dim);
  const Eigen::Index r = static_cast<Eigen::Index>(m.dim()) / d;
  Matrix out = Matrix::Zero(r, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    for (Eigen::Index i = 0; i < r; ++i) {
      Complex s = 0.0;
      for (Eigen::Index t = 0; t < d; ++t) s += moved.matrix()(i * d + t, j * d + t);
      out(i, j) = s;
    }
  }
  return LabeledOperator(std::move(out), std::move(rest));
}

LabeledOperator embed_identity(const LabeledOperator& m, const Subsystem& s,
                               const std::vector<std::string>& order) {
  return tensor(m, LabeledOperator::identity({s})).permuted(order);
}

HermitianCheck hermitian_check(const Matrix& a, double tol) {
  HermitianCheck out;
  if (a.rows() != a.cols()) return out;
  out.max_asymmetry = (a - a.adjoint()).norm();
  out.is_hermitian = out.max_asymmetry <= tol * (1.0 + a.norm());
  return out;
}

HermitianCheck hermitian_check(const LabeledOperator& a, double tol) {
  return hermitian_check(a.matrix(), tol);
}

EigenDecomposition jacobi_eigh(const Matrix& input) {
  const Eigen::Index n = input.rows();
  Matrix a = 0.5 * (input + input.adjoint());
  Matrix v = Matrix::Identity(n, n);
  EigenDecomposition out;

  const double total = a.norm();
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off <= kJacobiThreshold * total || off == 0.0) break;
    out.sweeps = sweep + 1;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        // Phase D = diag(1, e^{-i phi}) makes the (p,q) block real symmetric;
        // then a real rotation annihilates it.
        const Complex phase = apq / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = D * [[c, s], [-s, c]]
        const Complex g_pp = c;
        const Complex g_pq = s;
        const Complex g_qp = -s * std::conj(phase);
        const Complex g_qq = c * std::conj(phase);

        // a <- a G on columns p, q
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        // a <- G^dagger a on rows p, q
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
      }
    }
  }

  // Descending, ties by original index.
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(k)]).real();
    out.vectors.col(k) = v.col(idx[static_cast<std::size_t>(k)]);
  }
  return out;
}

EigenDecomposition hermitian_eig(const LabeledOperator& a, double tol) {
  require_hermitian(a, tol, "hermitian_eig");
  return jacobi_eigh(a.matrix());
}

Matrix spectral_fn(const Matrix& a, const std::function<double(double)>& f) {
  const auto eig = jacobi_eigh(a);
  Eigen::VectorXd fv(eig.values.size());
  for (Eigen::Index k = 0; k < fv.size(); ++k) fv(k) = f(eig.values(k));
  return eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
}

LabeledOperator spectral_fn(const LabeledOperator& a, const std::function<double(double)>& f,
                            double tol) {
  require_hermitian(a, tol, "spectral_fn");
  return LabeledOperator(spectral_fn(a.matrix(), f), a.labels());
}

double nuclear_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (hermitian_check(a, 1e-14).is_hermitian) {
    return jacobi_eigh(a).values.cwiseAbs().sum();
  }
  return Eigen::JacobiSVD<Matrix>(a).singularValues().sum();
}

double nuclear_norm(const LabeledOperator& a) { return nuclear_norm(a.matrix()); }

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (hermitian_check(a, 1e-14).is_hermitian) {
    return jacobi_eigh(a).values.cwiseAbs().maxCoeff();
  }
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

double operator_norm(const LabeledOperator& a) { return operator_norm(a.matrix()); }

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::kFirstDominates: return "first>=second";
    case Ordering::kSecondDominates: return "second>=first";
    case Ordering::kEqual: return "equal";
    case Ordering::kIncomparable: return "neither";
  }
  return "?";
}

OrderVerdict psd_order(const LabeledOperator& a, const LabeledOperator& b, double tol) {
  const LabeledOperator diff = a - b;
  require_hermitian(diff, tol, "psd_order");
  const auto eig = jacobi_eigh(diff.matrix());
  OrderVerdict v;
  v.max_eigenvalue = eig.values.size() ? eig.values(0) : 0.0;
  v.min_eigenvalue = eig.values.size() ? eig.values(eig.values.size() - 1) : 0.0;
  const double thr = tol * (1.0 + diff.frobenius_norm());
  const bool a_ge_b = v.min_eigenvalue >= -thr;
  const bool b_ge_a = v.max_eigenvalue <= thr;
  if (a_ge_b && b_ge_a) {
    v.ordering = Ordering::kEqual;
  } else if (a_ge_b) {
    v.ordering = Ordering::kFirstDominates;
  } else if (b_ge_a) {
    v.ordering = Ordering::kSecondDominates;
  } else {
    v.ordering = Ordering::kIncomparable;
  }
  return v;
}

}  // namespace choicert

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

// Maximum of a linear functional over the Choi spectrahedron, and the weak
// duality bound built on it.

#include <cmath>
#include <limits>

#include "choi_space.hpp"
#include "choicert/errors.hpp"
#include "choicert/solver.hpp"

namespace choicert {

namespace {

constexpr int kMaxNewtonSteps = 600;
constexpr double kMuShrink = 0.2;

// Orthonormal basis of the real space Herm(m).
std::vector<Matrix> hermitian_basis(Eigen::Index m) {
  std::vector<Matrix> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index k = 0; k < m; ++k) {
    Matrix b = Matrix::Zero(m, m);
    b(k, k) = 1.0;
    basis.push_back(std::move(b));
  }
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index l = k + 1; l < m; ++l) {
      Matrix re = Matrix::Zero(m, m);
      re(k, l) = r;
      re(l, k) = r;
      basis.push_back(std::move(re));
      Matrix im = Matrix::Zero(m, m);
      im(k, l) = Complex(0.0, r);
      im(l, k) = Complex(0.0, -r);
      basis.push_back(std::move(im));
    }
  }
  return basis;
}

struct BarrierPoint {
  Matrix lambda;
  Matrix slack;  // lift(lambda) - H
  Eigen::LLT<Matrix> chol;
  double value = 0.0;  // Tr(lambda) - mu log det(slack)
  bool ok = false;
};

BarrierPoint evaluate(const detail::ChoiSpace& space, const Matrix& h, const Matrix& lambda,
                      double mu) {
  BarrierPoint p;
  p.lambda = lambda;
  p.slack = space.lift(lambda) - h;
  p.chol.compute(p.slack);
  if (p.chol.info() != Eigen::Success) return p;
  double logdet = 0.0;
  const Matrix& l = p.chol.matrixLLT();
  for (Eigen::Index k = 0; k < l.rows(); ++k) {
    const double d = l(k, k).real();
    if (!(d > 0.0)) return p;
    logdet += 2.0 * std::log(d);
  }
  p.value = lambda.trace().real() - mu * logdet;
  p.ok = std::isfinite(p.value);
  return p;
}

struct Bracket {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

Bracket bracket_at(const detail::ChoiSpace& space, const Matrix& h, const BarrierPoint& p,
                   double mu) {
  Bracket b;
  // Upper: shifting lambda by lambda_max(H - lift(lambda)) makes it dual feasible.
  const auto eig = jacobi_eigh(p.slack);
  const double shift = -eig.values(eig.values.size() - 1);
  b.upper = p.lambda.trace().real() + static_cast<double>(space.rest_dim()) * shift;

  // Lower: X = mu S^{-1}, made exactly trace preserving by a congruence on the rest factor.
  const Eigen::Index n = space.n();
  Matrix x = mu * p.chol.solve(Matrix::Identity(n, n));
  x = 0.5 * (x + x.adjoint());
  const Matrix marg = space.trace_y(x);
  const auto meig = jacobi_eigh(marg);
  if (meig.values(meig.values.size() - 1) <= 0.0) return b;
  Eigen::VectorXd inv_sqrt = meig.values.cwiseSqrt().cwiseInverse();
  const Matrix k = space.lift(meig.vectors * inv_sqrt.asDiagonal() * meig.vectors.adjoint());
  const Matrix feasible = k * x * k;
  b.lower = (h * feasible).trace().real();
  return b;
}

}  // namespace

double choi_linear_max_diagonal(const LabeledOperator& h, const std::string& y_label) {
  if (!h.is_diagonal()) throw Error("choi_linear_max_diagonal: operator is not diagonal");
  const detail::ChoiSpace space(h.labels(), y_label);
  std::vector<double> best(static_cast<std::size_t>(space.rest_dim()),
                           -std::numeric_limits<double>::infinity());
  for (Eigen::Index i = 0; i < space.n(); ++i) {
    auto& b = best[static_cast<std::size_t>(space.rest_of(i))];
    b = std::max(b, h.matrix()(i, i).real());
  }
  double total = 0.0;
  for (double b : best) total += b;
  return total;
}

LinearMaxResult choi_linear_max_iterative(const LabeledOperator& h_in, const std::string& y_label,
                                          double tol) {
  const auto herm = hermitian_check(h_in);
  if (!herm.is_hermitian) {
    throw NotHermitianError("choi_linear_max: operator is not Hermitian", herm.max_asymmetry);
  }
  const detail::ChoiSpace space(h_in.labels(), y_label);
  const Matrix h = 0.5 * (h_in.matrix() + h_in.matrix().adjoint());
  const Eigen::Index m = space.rest_dim();
  const double scale = 1.0 + h.norm();
  const double target = tol * scale;
  const std::vector<Matrix> basis = hermitian_basis(m);
  const auto nb = static_cast<Eigen::Index>(basis.size());
  std::vector<Matrix> lifted;
  lifted.reserve(basis.size());
  for (const auto& b : basis) lifted.push_back(space.lift(b));

  const auto heig = jacobi_eigh(h);
  double mu = scale;
  Matrix lambda = Matrix::Identity(m, m) * (heig.values(0) + scale);
  BarrierPoint point = evaluate(space, h, lambda, mu);

  LinearMaxResult result;
  Bracket best;
  for (int step = 0; step < kMaxNewtonSteps; ++step) {
    result.iterations = step + 1;
    // Gradient and Hessian of Tr(lambda) - mu log det(lift(lambda) - H).
    std::vector<Matrix> p(basis.size());
    const Matrix sinv = point.chol.solve(Matrix::Identity(space.n(), space.n()));
    Eigen::VectorXd grad(nb);
    Eigen::MatrixXd hess(nb, nb);
    for (Eigen::Index a = 0; a < nb; ++a) {
      p[static_cast<std::size_t>(a)] = sinv * lifted[static_cast<std::size_t>(a)];
      grad(a) = basis[static_cast<std::size_t>(a)].trace().real() -
                mu * p[static_cast<std::size_t>(a)].trace().real();
    }
    for (Eigen::Index a = 0; a < nb; ++a) {
      for (Eigen::Index b = a; b < nb; ++b) {
        const double v = mu * (p[static_cast<std::size_t>(a)].transpose()
                                   .cwiseProduct(p[static_cast<std::size_t>(b)]))
                                  .sum()
                                  .real();
        hess(a, b) = v;
        hess(b, a) = v;
      }
    }
    const Eigen::VectorXd dir = hess.ldlt().solve(-grad);
    const double decrement2 = -grad.dot(dir);

    if (decrement2 <= 1e-9 * mu || !std::isfinite(decrement2)) {
      // Centred: read off a certified bracket, then tighten the barrier.
      const Bracket b = bracket_at(space, h, point, mu);
      best.lower = std::max(best.lower, b.lower);
      best.upper = std::min(best.upper, b.upper);
      if (best.upper - best.lower <= target) {
        result.lower = best.lower;
        result.upper = best.upper;
        return result;
      }
      mu *= kMuShrink;
      point = evaluate(space, h, point.lambda, mu);
      continue;
    }

    Matrix delta = Matrix::Zero(m, m);
    for (Eigen::Index a = 0; a < nb; ++a) delta += dir(a) * basis[static_cast<std::size_t>(a)];
    double t = 1.0;
    bool moved = false;
    if (decrement2 < 0.25 * mu) {
      // Quadratic region of the self-concordant barrier: the full step needs no line search.
      BarrierPoint trial = evaluate(space, h, point.lambda + delta, mu);
      if (trial.ok) {
        point = std::move(trial);
        continue;
      }
    }
    while (t > 1e-14) {
      BarrierPoint trial = evaluate(space, h, point.lambda + t * delta, mu);
      if (trial.ok && trial.value <= point.value - 0.25 * t * decrement2) {
        point = std::move(trial);
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      // No descent possible at this mu within double precision; treat as centred.
      const Bracket b = bracket_at(space, h, point, mu);
      best.lower = std::max(best.lower, b.lower);
      best.upper = std::min(best.upper, b.upper);
      if (best.upper - best.lower <= target) break;
      mu *= kMuShrink;
      point = evaluate(space, h, point.lambda, mu);
    }
  }
  result.lower = best.lower;
  result.upper = best.upper;
  if (!(best.upper - best.lower <= target)) {
    throw ConvergenceError("choi_linear_max: barrier method did not close the bracket", best.lower,
                           best.upper);
  }
  return result;
}

LinearMaxResult choi_linear_max(const LabeledOperator& h, const std::string& y_label) {
  if (h.is_diagonal()) {
    LinearMaxResult r;
    r.lower = r.upper = choi_linear_max_diagonal(h, y_label);
    r.exact = true;
    return r;
  }
  return choi_linear_max_iterative(h, y_label);
}

double dual_bound(const ProblemInstance& inst, const LabeledOperator& y) {
  const double op = operator_norm(y);
  if (op > 1.0 + 1e-9) {
    throw Error("dual_bound: ||Y||_op = " + std::to_string(op) + " exceeds 1");
  }
  const LabeledOperator h = certificate_H(inst.psi(), y);
  const double pairing = hs_inner(y, inst.sigma()).real();
  return pairing - choi_linear_max(h, inst.y_label()).value();
}

}  // namespace choicert

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

#include "choicert/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "choi_space.hpp"
#include "choicert/errors.hpp"

namespace choicert {

namespace {

constexpr int kPowerIterations = 100;

std::string other_label(const LabeledOperator& x, const std::string& y_label) {
  if (x.labels().size() != 2 || !x.has_label(y_label)) {
    throw LabelError("expected a two-factor operator containing '" + y_label + "'");
  }
  return x.labels()[0].name == y_label ? x.labels()[1].name : x.labels()[0].name;
}

Matrix clip_spectrum(const Matrix& a, double lo, double hi) {
  const auto eig = jacobi_eigh(a);
  Eigen::VectorXd v = eig.values.cwiseMax(lo).cwiseMin(hi);
  return eig.vectors * v.asDiagonal() * eig.vectors.adjoint();
}

Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

// (1 (x) M^{-1/2}) P (1 (x) M^{-1/2}) with P the PSD part of x: exactly feasible, not a projection.
Matrix congruence_restore(const detail::ChoiSpace& space, const Matrix& x) {
  const Matrix p = project_psd(hermitian_part(x));
  const Matrix marg = space.trace_y(p);
  const auto eig = jacobi_eigh(marg);
  Eigen::VectorXd inv_sqrt(eig.values.size());
  for (Eigen::Index k = 0; k < inv_sqrt.size(); ++k) {
    inv_sqrt(k) = 1.0 / std::sqrt(std::max(eig.values(k), 1e-12));
  }
  const Matrix k = space.lift(eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.adjoint());
  return hermitian_part(k * p * k);
}

// Dense matrix of X -> (Id (x) Psi)(X) on column-major vectorized operators,
// from the Choi labels to sigma's labels.
Matrix forward_matrix(const ProblemInstance& inst) {
  const Labels labels = inst.choi_labels();
  const auto n = static_cast<Eigen::Index>(space_dim(labels));
  const auto ns = static_cast<Eigen::Index>(inst.sigma().dim());
  Matrix a(ns * ns, n * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      Matrix unit = Matrix::Zero(n, n);
      unit(i, j) = 1.0;
      const Matrix img = forward_map(inst, LabeledOperator(unit, labels)).matrix();
      a.col(j * n + i) = Eigen::Map<const Eigen::VectorXcd>(img.data(), ns * ns);
    }
  }
  return a;
}

Matrix apply_vec(const Matrix& map, const Matrix& x, Eigen::Index out_dim) {
  const Eigen::Map<const Eigen::VectorXcd> v(x.data(), x.size());
  Eigen::VectorXcd img = map * v;
  return Eigen::Map<Matrix>(img.data(), out_dim, out_dim);
}

double power_norm(const Matrix& a) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(a.cols()) / std::sqrt(static_cast<double>(a.cols()));
  double est = 0.0;
  for (int k = 0; k < kPowerIterations; ++k) {
    Eigen::VectorXcd w = a.adjoint() * (a * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    est = nw;
    v = w / nw;
  }
  return std::sqrt(est);
}

}  // namespace

void SolverOptions::validate() const {
  if (max_iters <= 0 || !(eps > 0.0) || dykstra_iters <= 0 || restarts <= 0 ||
      !(step_scale > 0.0) || !(step_ratio > 0.0) || check_every <= 0) {
    throw std::invalid_argument("SolverOptions: all parameters must be positive");
  }
}

std::string to_string(SolverMethod m) {
  return m == SolverMethod::kL1FastPath ? "l1_fast_path" : "first_order";
}

Matrix project_psd(const Matrix& a) { return clip_spectrum(a, 0.0, std::numeric_limits<double>::infinity()); }

LabeledOperator project_psd(const LabeledOperator& a, double tol) {
  const auto herm = hermitian_check(a, tol);
  if (!herm.is_hermitian) {
    throw NotHermitianError("project_psd: operator is not Hermitian", herm.max_asymmetry);
  }
  return LabeledOperator(project_psd(a.matrix()), a.labels());
}

LabeledOperator project_tp(const LabeledOperator& x, const std::string& y_label) {
  const detail::ChoiSpace space(x.labels(), y_label);
  return LabeledOperator(space.project_tp(x.matrix()), x.labels());
}

ChoiMatrix project_choi(const LabeledOperator& x, const std::string& y_label,
                        const SolverOptions& opts) {
  const std::string in_label = other_label(x, y_label);
  const auto herm = hermitian_check(x);
  if (!herm.is_hermitian) {
    throw NotHermitianError("project_choi: operator is not Hermitian", herm.max_asymmetry);
  }
  const detail::ChoiSpace space(x.labels(), y_label);
  Matrix cur = hermitian_part(x.matrix());
  Matrix correction = Matrix::Zero(cur.rows(), cur.cols());
  double move = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.dykstra_iters; ++it) {
    const Matrix psd = project_psd(cur + correction);
    correction = cur + correction - psd;
    cur = hermitian_part(space.project_tp(psd));
    move = (cur - psd).norm();
    if (move <= 1e-13 * (1.0 + cur.norm())) break;
  }
  const auto eig = jacobi_eigh(cur);
  const double min_eig = eig.values(eig.values.size() - 1);
  const double tp = (space.trace_y(cur) - Matrix::Identity(space.rest_dim(), space.rest_dim())).norm();
  if (min_eig < -1e-9 || tp > 1e-9) {
    throw ConvergenceError("project_choi: Dykstra did not reach feasibility (min eigenvalue " +
                               std::to_string(min_eig) + ", trace residual " + std::to_string(tp) + ")",
                           min_eig, tp);
  }
  return choi_validate(LabeledOperator(cur, x.labels()), y_label, in_label);
}

std::optional<double> relabeling_scale(const ProblemInstance& inst, double tol) {
  const Matrix& s = inst.psi().matrix();
  if (s.rows() != s.cols() || inst.dim_x() != inst.dim_z()) return std::nullopt;
  const double c = s(0, 0).real();
  if (!(c > tol)) return std::nullopt;
  const Matrix diff = s - c * Matrix::Identity(s.rows(), s.cols());
  if (diff.cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return c;
}

LabeledOperator diagonal_choi(const ProblemInstance& inst,
                              const std::vector<std::vector<double>>& weights) {
  const std::size_t dx = inst.dim_x();
  const std::size_t dy = inst.dim_y();
  if (weights.size() != dx) throw DimensionError("diagonal_choi: one weight group per input index");
  std::vector<double> diag(dx * dy);
  for (std::size_t x = 0; x < dx; ++x) {
    if (weights[x].size() != dy) throw DimensionError("diagonal_choi: group size must be dim(Y)");
    for (std::size_t y = 0; y < dy; ++y) diag[x * dy + y] = weights[x][y];
  }
  return LabeledOperator::diagonal(inst.choi_labels(), diag);
}

L1Solution l1_fast_path(const ProblemInstance& inst) {
  const auto scale = relabeling_scale(inst);
  if (!scale) throw NotApplicableError("l1_fast_path: Psi_rho is not a scaled relabeling");
  if (!inst.sigma().is_diagonal(1e-12)) throw NotApplicableError("l1_fast_path: sigma is not diagonal");
  const double c = *scale;
  const LabeledOperator sigma = inst.sigma().permuted({inst.z_label(), inst.y_label()});
  const std::size_t dz = inst.dim_z();
  const std::size_t dy = inst.dim_y();

  L1Solution sol;
  sol.scale = c;
  std::vector<std::vector<double>> weights;
  std::vector<double> signs(dz);
  double value = 0.0;
  for (std::size_t z = 0; z < dz; ++z) {
    std::vector<double> t(dy);
    double total = 0.0;
    for (std::size_t y = 0; y < dy; ++y) {
      const auto k = static_cast<Eigen::Index>(z * dy + y);
      t[y] = sigma.matrix()(k, k).real() / c;
      total += t[y];
    }
    L1Group g;
    g.value = std::abs(c * total - c);
    g.lower.resize(dy);
    g.upper.resize(dy);
    for (std::size_t y = 0; y < dy; ++y) {
      const double others = total - t[y];
      if (total >= 1.0) {
        // every coordinate undershoots its target: 0 <= x_y <= t_y
        g.lower[y] = std::max(0.0, 1.0 - others);
        g.upper[y] = std::min(t[y], 1.0);
      } else {
        // every coordinate overshoots: x_y >= t_y
        g.lower[y] = t[y];
        g.upper[y] = 1.0 - others;
      }
    }
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t y = 0; y < dy; ++y) {
      lo += g.lower[y];
      hi += g.upper[y];
    }
    const double lambda = hi > lo ? (1.0 - lo) / (hi - lo) : 0.0;
    g.canonical.resize(dy);
    for (std::size_t y = 0; y < dy; ++y) {
      g.canonical[y] = g.lower[y] + lambda * (g.upper[y] - g.lower[y]);
    }
    signs[z] = total >= 1.0 ? 1.0 : -1.0;
    value += g.value;
    weights.push_back(g.canonical);
    sol.groups.push_back(std::move(g));
  }

  SolverResult& r = sol.result;
  r.method = SolverMethod::kL1FastPath;
  r.x_opt = as_instance_choi(inst, diagonal_choi(inst, weights));
  r.primal_value = nuclear_norm(residual(inst, *r.x_opt));

  // Y = diag(sign(S_z - c)) (x) 1_Y attains the closed-form value.
  std::vector<double> ydiag(dz * dy);
  for (std::size_t z = 0; z < dz; ++z) {
    for (std::size_t y = 0; y < dy; ++y) ydiag[z * dy + y] = signs[z];
  }
  LabeledOperator ycert = LabeledOperator::diagonal(sigma.labels(), ydiag).aligned_to(inst.sigma());
  r.dual_bound = dual_bound(inst, ycert);
  r.dual_certificate = std::move(ycert);
  r.gap = r.primal_value - r.dual_bound;
  r.converged = std::abs(r.primal_value - value) <= 1e-10 * (1.0 + value);
  return sol;
}

SolverResult solve_first_order(const ProblemInstance& inst, const SolverOptions& opts) {
  opts.validate();
  const Labels labels = inst.choi_labels();
  const detail::ChoiSpace space(labels, inst.y_label());
  const Eigen::Index n = space.n();
  const Eigen::Index m = space.rest_dim();
  const auto ns = static_cast<Eigen::Index>(inst.sigma().dim());
  const Matrix& sigma = inst.sigma().matrix();

  const Matrix fwd = forward_matrix(inst);
  const Matrix bwd = fwd.adjoint();
  const double a_norm = power_norm(fwd);
  const double k_norm = std::sqrt(a_norm * a_norm + static_cast<double>(space.y_dim()));
  const double tau = opts.step_scale / k_norm * std::sqrt(opts.step_ratio);
  const double sig = opts.step_scale / k_norm / std::sqrt(opts.step_ratio);

  SolverResult best;
  best.primal_value = std::numeric_limits<double>::infinity();
  best.dual_bound = -std::numeric_limits<double>::infinity();
  best.method = SolverMethod::kFirstOrder;
  int total_iters = 0;

  auto evaluate = [&](const Matrix& x, const Matrix& ydual) {
    Matrix feasible;
    try {
      feasible = project_choi(LabeledOperator(x, labels), inst.y_label(), opts).op().matrix();
    } catch (const ConvergenceError&) {
      feasible = congruence_restore(space, x);
    }
    const ChoiMatrix choi = as_instance_choi(inst, LabeledOperator(feasible, labels));
    const LabeledOperator delta = residual(inst, choi);
    const double p = nuclear_norm(delta);
    if (p < best.primal_value) {
      best.primal_value = p;
      best.x_opt = choi;
    }
    // Two dual candidates: the splitting's own dual iterate, and sign(Delta).
    std::vector<LabeledOperator> candidates;
    candidates.emplace_back(clip_spectrum(hermitian_part(-ydual), -1.0, 1.0), inst.sigma().labels());
    candidates.push_back(dual_candidate(delta));
    for (const auto& y : candidates) {
      double d = -std::numeric_limits<double>::infinity();
      try {
        d = dual_bound(inst, y);
      } catch (const ConvergenceError& e) {
        d = hs_inner(y, inst.sigma()).real() - e.upper();
      }
      if (d > best.dual_bound) {
        best.dual_bound = d;
        best.dual_certificate = y;
      }
    }
    return best.primal_value - best.dual_bound <= opts.eps * (1.0 + best.primal_value);
  };

  bool done = false;
  for (int restart = 0; restart < opts.restarts && !done; ++restart) {
    Matrix x = restart == 0 && !opts.random_start
                   ? Matrix(Matrix::Identity(n, n) / static_cast<double>(space.y_dim()))
                   : random_channel(opts.seed + static_cast<std::uint64_t>(restart), inst.dim_x(),
                                    inst.dim_y(), inst.x_label(), inst.y_label())
                         .op()
                         .permuted({inst.x_label(), inst.y_label()})
                         .matrix();
    Matrix xbar = x;
    Matrix ydual = Matrix::Zero(ns, ns);
    Matrix q = Matrix::Zero(m, m);
    for (int it = 1; it <= opts.max_iters; ++it) {
      ++total_iters;
      ydual = clip_spectrum(hermitian_part(ydual + sig * (apply_vec(fwd, xbar, ns) - sigma)), -1.0, 1.0);
      q += sig * (space.trace_y(xbar) - Matrix::Identity(m, m));
      const Matrix grad = apply_vec(bwd, ydual, n) + space.lift(q);
      const Matrix next = project_psd(hermitian_part(x - tau * grad));
      xbar = 2.0 * next - x;
      x = next;
      if (it % opts.check_every == 0 || it == opts.max_iters) {
        if (evaluate(x, ydual)) {
          done = true;
          break;
        }
      }
    }
  }

  best.iterations = total_iters;
  best.gap = best.primal_value - best.dual_bound;
  best.converged = done;
  return best;
}

SolverResult solve(const ProblemInstance& inst, const SolverOptions& opts) {
  opts.validate();
  if (opts.allow_fast_path) {
    try {
      return l1_fast_path(inst).result;
    } catch (const NotApplicableError&) {
    }
  }
  return solve_first_order(inst, opts);
}

}  // namespace choicert

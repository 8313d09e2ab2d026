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

#include "choicert/paperbench.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "choicert/errors.hpp"

namespace choicert {

namespace {

constexpr double kStageTol = 1e-12;
constexpr double kOptimalityTol = 1e-6;
constexpr std::size_t kMaxCandidates = 512;

const Labels kSigmaLabels{{"Z", 2}, {"Y", 2}};
const Labels kChoiLabels{{"X", 2}, {"Y", 2}};

// Expected intermediate values for the built-in instance, [Z, Y] order.
const std::vector<double> kDelta{0.05, 0.15, 0.0, -0.2};
const std::vector<double> kSignDelta{1.0, 1.0, 0.0, -1.0};
const std::vector<double> kH{0.5, 0.5, 0.0, -0.5};
const std::vector<double> kTraced{0.5, -0.3};
const std::vector<double> kLift{0.5, 0.5, -0.3, -0.3};
const std::vector<double> kTightDual{1.0, 1.0, -1.0, -1.0};
constexpr double kOptimalValue = 0.4;

struct StageLog {
  VerificationReport& rep;
  void add(const std::string& name, bool passed, double residual) {
    rep.stages.push_back({name, passed, residual});
    if (!passed && rep.failing_stage.empty()) rep.failing_stage = name;
  }
};

double diff_to(const LabeledOperator& a, const Labels& labels, const std::vector<double>& diag) {
  return distance(a, LabeledOperator::diagonal(labels, diag));
}

// Per-group vertices of the optimal face: fill coordinates greedily, `first` before the others.
std::vector<double> greedy_vertex(const L1Group& g, std::size_t first) {
  std::vector<double> x = g.lower;
  double remaining = 1.0;
  for (double v : g.lower) remaining -= v;
  std::vector<std::size_t> order{first};
  for (std::size_t y = 0; y < x.size(); ++y) {
    if (y != first) order.push_back(y);
  }
  for (std::size_t y : order) {
    const double add = std::clamp(remaining, 0.0, g.upper[y] - g.lower[y]);
    x[y] += add;
    remaining -= add;
  }
  return x;
}

std::vector<std::vector<double>> group_candidates(const L1Group& g) {
  std::vector<std::vector<double>> out{g.canonical};
  for (std::size_t y = 0; y < g.lower.size(); ++y) {
    auto v = greedy_vertex(g, y);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  return out;
}

ProblemInstance diagonal_instance(const std::vector<double>& sigma_diag, std::size_t dz,
                                  std::size_t dy) {
  return ProblemInstance::create(maximally_entangled(dz),
                                 LabeledOperator::diagonal({{"Z", dz}, {"Y", dy}}, sigma_diag));
}

}  // namespace

LabeledOperator maximally_entangled(std::size_t d, const std::string& x_label,
                                    const std::string& z_label) {
  const auto n = static_cast<Eigen::Index>(d * d);
  Matrix rho = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      rho(static_cast<Eigen::Index>(i * d + i), static_cast<Eigen::Index>(j * d + j)) =
          1.0 / static_cast<double>(d);
    }
  }
  return LabeledOperator(std::move(rho), {{x_label, d}, {z_label, d}});
}

PaperCase paper_instance(const PaperLiterals& literals) {
  ProblemInstance inst = ProblemInstance::create(
      maximally_entangled(2), LabeledOperator::diagonal(kSigmaLabels, literals.sigma_diag));
  ChoiMatrix x = as_instance_choi(inst, LabeledOperator::diagonal(kChoiLabels, literals.x_diag));
  return PaperCase{std::move(inst), std::move(x)};
}

VerificationReport verify_paper(const PaperLiterals& literals) {
  VerificationReport rep;
  StageLog log{rep};

  const PaperCase pc = paper_instance(literals);
  const ProblemInstance& inst = pc.instance;
  const ChoiMatrix& x = pc.x;

  // (Id (x) Psi_rho)(X) = X / 2 under X -> Z
  const LabeledOperator image = apply_on_factor(inst.psi(), x.op(), "X");
  rep.relabeling_residual = distance(image, 0.5 * x.op().relabeled("X", "Z"));
  log.add("half_relabeling", rep.relabeling_residual <= kStageTol, rep.relabeling_residual);

  // Feasibility
  rep.x_min_eigenvalue = x.min_eigenvalue();
  rep.x_tp_residual = x.tp_residual();
  log.add("x_feasible", rep.x_min_eigenvalue >= -kStageTol && rep.x_tp_residual <= kStageTol,
          std::max(rep.x_tp_residual, -std::min(rep.x_min_eigenvalue, 0.0)));

  // Certificate chain
  rep.certificate = certify(inst, x);
  const CertificateReport& c = rep.certificate;
  const double d_delta = diff_to(c.delta, kSigmaLabels, kDelta);
  log.add("delta", d_delta <= kStageTol, d_delta);
  const double d_y = diff_to(c.y, kSigmaLabels, kSignDelta);
  log.add("sign_delta", d_y <= kStageTol, d_y);
  const double d_h = distance(c.h.relabeled("X", "Z"), LabeledOperator::diagonal(kSigmaLabels, kH));
  log.add("h", d_h <= kStageTol, d_h);
  const double d_tr = distance(c.traced.relabeled("X", "Z"), LabeledOperator::diagonal({{"Z", 2}}, kTraced));
  log.add("traced", d_tr <= kStageTol && c.hermitian_ok, d_tr);
  const double d_lift = distance(c.lift.relabeled("X", "Z"), LabeledOperator::diagonal(kSigmaLabels, kLift));
  log.add("lift", d_lift <= kStageTol, d_lift);
  const double d_eig = std::max(std::abs(c.forward_order.min_eigenvalue + 0.2),
                                std::abs(c.forward_order.max_eigenvalue - 0.3));
  log.add("neither_order",
          c.forward_order.ordering == Ordering::kIncomparable && d_eig <= kStageTol, d_eig);

  // Optimality of X by two independent routes
  rep.objective_at_x = nuclear_norm(c.delta);
  const L1Solution l1 = l1_fast_path(inst);
  rep.optimal_value_fast_path = l1.result.primal_value;
  rep.dual_certificate_value =
      dual_bound(inst, LabeledOperator::diagonal(kSigmaLabels, kTightDual));
  rep.sign_candidate_value = dual_bound(inst, c.y);
  const double route1 = std::abs(rep.objective_at_x - rep.optimal_value_fast_path);
  const double route2 = rep.objective_at_x - rep.dual_certificate_value;
  log.add("optimal_by_closed_form",
          route1 <= kOptimalityTol && std::abs(rep.optimal_value_fast_path - kOptimalValue) <= kOptimalityTol,
          route1);
  log.add("optimal_by_dual_bound", route2 <= kOptimalityTol && route2 >= -kOptimalityTol, route2);

  SolverOptions opts;
  opts.allow_fast_path = false;
  const SolverResult fo = solve_first_order(inst, opts);
  rep.optimal_value_solver = fo.primal_value;
  rep.solver_converged = fo.converged;
  log.add("first_order_agrees",
          fo.converged && std::abs(fo.primal_value - rep.optimal_value_fast_path) <= kOptimalityTol,
          std::abs(fo.primal_value - rep.optimal_value_fast_path));

  rep.theorem_confirmed = rep.failing_stage.empty() && !c.satisfied &&
                          !c.forward_order.first_dominates() && !c.forward_order.second_dominates();
  return rep;
}

std::vector<SearchRecord> search(const SearchOptions& opts) {
  if (opts.trials == 0) throw std::invalid_argument("search: trials must be >= 1");
  const std::size_t dz = opts.dim_z;
  const std::size_t dy = opts.dim_y;
  std::vector<SearchRecord> records;
  records.reserve(opts.trials);

  for (std::size_t t = 0; t < opts.trials; ++t) {
    SearchRecord rec;
    rec.trial = t;
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed & 0xffffffffu),
                      static_cast<std::uint32_t>(opts.seed >> 32), static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    rec.seed = rng();
    if (t == 0 && dz == 2 && dy == 2) {
      rec.sigma_diag = PaperLiterals{}.sigma_diag;
    } else {
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      rec.sigma_diag.resize(dz * dy);
      double total = 0.0;
      for (auto& v : rec.sigma_diag) {
        v = uni(rng);
        total += v;
      }
      for (auto& v : rec.sigma_diag) v /= total;
    }

    const ProblemInstance inst = diagonal_instance(rec.sigma_diag, dz, dy);
    const L1Solution l1 = l1_fast_path(inst);
    rec.optimal_value = l1.result.primal_value;
    rec.dual_bound = l1.result.dual_bound;

    // Cartesian product of per-group candidates, capped.
    std::vector<std::vector<std::vector<double>>> per_group;
    std::size_t combos = 1;
    for (const auto& g : l1.groups) {
      per_group.push_back(group_candidates(g));
      combos *= per_group.back().size();
    }
    std::vector<std::vector<std::vector<double>>> choices;
    if (combos <= kMaxCandidates) {
      std::vector<std::size_t> pick(per_group.size(), 0);
      for (std::size_t k = 0; k < combos; ++k) {
        std::vector<std::vector<double>> w;
        for (std::size_t z = 0; z < per_group.size(); ++z) w.push_back(per_group[z][pick[z]]);
        choices.push_back(std::move(w));
        for (std::size_t z = per_group.size(); z-- > 0;) {
          if (++pick[z] < per_group[z].size()) break;
          pick[z] = 0;
        }
      }
    } else {
      std::vector<std::vector<double>> base;
      for (const auto& g : l1.groups) base.push_back(g.canonical);
      choices.push_back(base);
      for (std::size_t z = 0; z < per_group.size(); ++z) {
        for (std::size_t k = 1; k < per_group[z].size(); ++k) {
          auto w = base;
          w[z] = per_group[z][k];
          choices.push_back(std::move(w));
        }
      }
    }

    bool recorded = false;
    for (const auto& w : choices) {
      ++rec.candidates;
      const ChoiMatrix x = as_instance_choi(inst, diagonal_choi(inst, w));
      const CertificateReport cert = certify(inst, x);
      const double value = nuclear_norm(cert.delta);
      const bool optimal = value - rec.dual_bound <= kOptimalityTol;
      const bool violated = optimal && !cert.satisfied;
      if (violated) ++rec.violating_candidates;
      if (!recorded && (violated || rec.candidates == 1)) {
        rec.x = x.op();
        rec.satisfied = cert.satisfied;
        rec.both_orders_fail = !cert.forward_order.first_dominates() && !cert.forward_order.second_dominates();
        rec.violation = violated;
        recorded = violated;
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

bool recheck_violation(const SearchRecord& rec, std::size_t dim_z, std::size_t dim_y) {
  const ProblemInstance inst = diagonal_instance(rec.sigma_diag, dim_z, dim_y);
  const ChoiMatrix x = as_instance_choi(inst, rec.x);
  const CertificateReport cert = certify(inst, x);
  const double value = nuclear_norm(cert.delta);
  const double lower = l1_fast_path(inst).result.dual_bound;
  const bool violated = value - lower <= kOptimalityTol && !cert.satisfied;
  return violated == rec.violation;
}

}  // namespace choicert

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

#include "choicert/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "choicert/errors.hpp"
#include "choicert/instance_io.hpp"
#include "choicert/paperbench.hpp"

namespace choicert {

namespace {

// Prints with %g-like brevity; -0 and values within 1e-12 of zero print as 0.
std::string fmt(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string fmt_list(const Eigen::VectorXd& v) {
  std::string s;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k) s += ' ';
    s += fmt(v(k));
  }
  return s;
}

std::string diag_list(const LabeledOperator& op) {
  Eigen::VectorXd d = op.matrix().diagonal().real();
  return fmt_list(d);
}

void print_certificate(std::ostream& out, const CertificateReport& c) {
  out << "Delta diagonal: " << diag_list(c.delta) << '\n';
  out << "Y diagonal: " << diag_list(c.y) << '\n';
  out << "H eigenvalues: " << fmt_list(c.h_eigenvalues) << '\n';
  out << "Tr_Y(HX) diagonal: " << diag_list(c.traced) << '\n';
  out << "H - lift eigenvalues: " << fmt_list(c.h_minus_lift_eigenvalues) << '\n';
  out << "Tr_Y(HX) Hermitian: " << (c.hermitian_ok ? "yes" : "no") << '\n';
  out << "order(H, lift): " << to_string(c.forward_order.ordering) << '\n';
  out << "certificate: " << (c.satisfied ? "satisfied" : "violated") << '\n';
}

int cmd_verify_paper(bool json, double perturb, std::ostream& out) {
  PaperLiterals lit;
  lit.sigma_diag[0] += perturb;
  lit.sigma_diag[1] -= perturb;
  const VerificationReport rep = verify_paper(lit);
  if (json) {
    out << to_json(rep).dump(2) << '\n';
  } else {
    for (const auto& s : rep.stages) {
      out << (s.passed ? "[ok]   " : "[FAIL] ") << s.name << "  residual " << fmt(s.residual) << '\n';
    }
    print_certificate(out, rep.certificate);
    out << "optimal value (closed form): " << fmt(rep.optimal_value_fast_path) << '\n';
    out << "optimal value (first order): " << fmt(rep.optimal_value_solver) << '\n';
    out << "dual bound at diag(1, 1, -1, -1): " << fmt(rep.dual_certificate_value) << '\n';
    out << "dual bound at sign(Delta): " << fmt(rep.sign_candidate_value) << '\n';
    if (rep.theorem_confirmed) {
      out << "confirmed: the optimal channel violates the sign certificate in both orders\n";
    } else {
      out << "not confirmed; failing stage: " << rep.failing_stage << '\n';
    }
  }
  return rep.theorem_confirmed ? kExitOk : kExitFailure;
}

int cmd_certify(const std::string& path, bool json, std::ostream& out) {
  const InstanceFile f = read_instance(path);
  const ProblemInstance inst = to_problem(f);
  const double tol = tolerance_from_env();
  const ChoiMatrix x = as_instance_choi(inst, file_choi(f), tol);
  const CertificateReport rep = certify(inst, x, tol);
  if (json) {
    out << to_json(rep).dump(2) << '\n';
  } else {
    print_certificate(out, rep);
  }
  return rep.satisfied ? kExitOk : kExitViolated;
}

struct SolveFlags {
  std::string path;
  double eps = 1e-7;
  int max_iters = 20000;
  bool json = false;
  bool no_fast_path = false;
  std::string out_path;
};

int cmd_solve(const SolveFlags& flags, std::ostream& out) {
  const InstanceFile f = read_instance(flags.path);
  const ProblemInstance inst = to_problem(f);
  SolverOptions opts;
  opts.eps = flags.eps;
  opts.max_iters = flags.max_iters;
  opts.allow_fast_path = !flags.no_fast_path;
  opts.check_every = std::min(opts.check_every, flags.max_iters);
  try {
    opts.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const SolverResult res = solve(inst, opts);
  if (flags.json) {
    out << to_json(res).dump(2) << '\n';
  } else {
    out << "method: " << to_string(res.method) << '\n';
    out << "value: " << fmt(res.primal_value) << '\n';
    out << "dual bound: " << fmt(res.dual_bound) << '\n';
    out << "gap: " << fmt(res.gap) << '\n';
    out << "iterations: " << res.iterations << '\n';
    out << "converged: " << (res.converged ? "yes" : "no") << '\n';
  }
  if (!flags.out_path.empty()) {
    std::optional<LabeledOperator> x;
    if (res.x_opt) x = res.x_opt->op();
    write_json(flags.out_path, to_json(to_instance_file(inst, x)));
  }
  return res.converged ? kExitOk : kExitNotConverged;
}

int cmd_search(std::size_t trials, std::uint64_t seed, const std::string& out_path,
               std::ostream& out) {
  SearchOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  const auto records = search(opts);
  std::size_t violations = 0;
  std::size_t both = 0;
  Json arr = Json::array();
  for (const auto& r : records) {
    if (r.violation) ++violations;
    if (r.violation && r.both_orders_fail) ++both;
    arr.push_back(to_json(r));
  }
  if (!out_path.empty()) {
    write_json(out_path, {{"trials", trials}, {"seed", seed}, {"records", arr}});
  }
  out << "trials: " << trials << '\n';
  out << "violations: " << violations << '\n';
  out << "violations failing both orders: " << both << '\n';
  return kExitOk;
}

}  // namespace

double tolerance_from_env() {
  const char* s = std::getenv("CHOICERT_TOL");
  if (s == nullptr || *s == '\0') return kDefaultTolerance;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw InputError(std::string("CHOICERT_TOL must be a positive number, got '") + s + "'");
  }
  return v;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Channel fitting and sign-certificate checks"};
  app.require_subcommand(1);

  bool vp_json = false;
  double vp_perturb = 0.0;
  auto* vp = app.add_subcommand("verify-paper", "Replay the two-qubit counterexample");
  vp->add_flag("--json", vp_json, "Print the report as JSON");
  vp->add_option("--perturb-sigma", vp_perturb)->group("");

  std::string cert_path;
  bool cert_json = false;
  auto* cert = app.add_subcommand("certify", "Check the sign certificate for the x in FILE");
  cert->add_option("FILE", cert_path, "Instance file")->required();
  cert->add_flag("--json", cert_json, "Print the report as JSON");

  SolveFlags sf;
  auto* sol = app.add_subcommand("solve", "Minimize the nuclear-norm objective over channels");
  sol->add_option("FILE", sf.path, "Instance file")->required();
  sol->add_option("--eps", sf.eps, "Relative gap target")->check(CLI::PositiveNumber);
  sol->add_option("--max-iters", sf.max_iters, "Iteration limit")->check(CLI::PositiveNumber);
  sol->add_flag("--json", sf.json, "Print the result as JSON");
  sol->add_flag("--no-fast-path", sf.no_fast_path, "Always use the first-order method");
  sol->add_option("--out", sf.out_path, "Write the instance with the optimal x");

  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::string search_out;
  auto* se = app.add_subcommand("search", "Random diagonal-sigma counterexample search");
  se->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  se->add_option("--seed", seed, "Seed");
  se->add_option("--out", search_out, "Write the records as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (*vp) return cmd_verify_paper(vp_json, vp_perturb, out);
    if (*cert) return cmd_certify(cert_path, cert_json, out);
    if (*sol) return cmd_solve(sf, out);
    if (*se) return cmd_search(trials, seed, search_out, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const LabelError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DensityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ChoiError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NotHermitianError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace choicert

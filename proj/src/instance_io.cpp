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

#include "choicert/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "choicert/errors.hpp"

namespace choicert {

namespace {

Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

std::size_t space(const InstanceFile& f, const char* name) {
  auto it = f.spaces.find(name);
  if (it == f.spaces.end()) throw InputError(std::string("instance file: missing space '") + name + "'");
  return it->second;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) {
    throw InputError(what + ": expected " + std::to_string(n) + " rows");
  }
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix m(dim, dim);
  for (std::size_t r = 0; r < n; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != n) {
      throw InputError(what + ": row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < n; ++c) {
      const Json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw InputError(what + ": entry (" + std::to_string(r) + "," + std::to_string(c) +
                         ") must be [re, im]");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

InstanceFile parse_instance(const Json& j) {
  if (!j.is_object()) throw InputError("instance file: top level must be an object");
  if (!j.contains("spaces") || !j["spaces"].is_object()) {
    throw InputError("instance file: missing 'spaces' object");
  }
  InstanceFile f;
  for (const auto& [name, dim] : j["spaces"].items()) {
    if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) {
      throw InputError("instance file: dimension of '" + name + "' must be a positive integer");
    }
    f.spaces[name] = dim.get<std::size_t>();
  }
  if (f.spaces.size() != 3) throw InputError("instance file: 'spaces' must list exactly X, Y and Z");
  const std::size_t dx = space(f, "X");
  const std::size_t dy = space(f, "Y");
  const std::size_t dz = space(f, "Z");
  if (!j.contains("rho") || !j.contains("sigma")) {
    throw InputError("instance file: 'rho' and 'sigma' are required");
  }
  f.rho = matrix_from_json(j["rho"], dx * dz, "rho");
  f.sigma = matrix_from_json(j["sigma"], dz * dy, "sigma");
  if (j.contains("x") && !j["x"].is_null()) f.x = matrix_from_json(j["x"], dx * dy, "x");
  return f;
}

InstanceFile parse_instance_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("instance file: malformed JSON: ") + e.what());
  }
  return parse_instance(j);
}

InstanceFile read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str());
}

Json to_json(const InstanceFile& f) {
  Json j;
  j["spaces"] = Json::object();
  for (const auto& [k, v] : f.spaces) j["spaces"][k] = v;
  j["rho"] = matrix_to_json(f.rho);
  j["sigma"] = matrix_to_json(f.sigma);
  if (f.x) j["x"] = matrix_to_json(*f.x);
  return j;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

ProblemInstance to_problem(const InstanceFile& f) {
  const std::size_t dx = space(f, "X");
  const std::size_t dy = space(f, "Y");
  const std::size_t dz = space(f, "Z");
  return ProblemInstance::create(LabeledOperator(f.rho, {{"X", dx}, {"Z", dz}}),
                                 LabeledOperator(f.sigma, {{"Z", dz}, {"Y", dy}}));
}

LabeledOperator file_choi(const InstanceFile& f) {
  if (!f.x) throw InputError("instance file has no 'x'");
  return LabeledOperator(*f.x, {{"X", space(f, "X")}, {"Y", space(f, "Y")}});
}

InstanceFile to_instance_file(const ProblemInstance& inst, const std::optional<LabeledOperator>& x) {
  if (inst.x_label() != "X" || inst.y_label() != "Y" || inst.z_label() != "Z") {
    throw InputError("instance files use the labels X, Y and Z");
  }
  InstanceFile f;
  f.spaces = {{"X", inst.dim_x()}, {"Y", inst.dim_y()}, {"Z", inst.dim_z()}};
  f.rho = inst.rho().permuted({"X", "Z"}).matrix();
  f.sigma = inst.sigma().permuted({"Z", "Y"}).matrix();
  if (x) f.x = x->permuted({"X", "Y"}).matrix();
  return f;
}

Json to_json(const LabeledOperator& op) {
  Json labels = Json::array();
  for (const auto& s : op.labels()) labels.push_back({{"name", s.name}, {"dim", s.dim}});
  return {{"labels", labels}, {"matrix", matrix_to_json(op.matrix())}};
}

Json to_json(const CertificateReport& r) {
  return {
      {"delta", to_json(r.delta)},
      {"y", to_json(r.y)},
      {"h", to_json(r.h)},
      {"traced", to_json(r.traced)},
      {"lift", to_json(r.lift)},
      {"traced_asymmetry", r.traced_hermitian.max_asymmetry},
      {"hermitian_ok", r.hermitian_ok},
      {"order", to_string(r.forward_order.ordering)},
      {"h_dominates_lift", r.forward_order.first_dominates()},
      {"lift_dominates_h", r.forward_order.second_dominates()},
      {"h_minus_lift_min_eigenvalue", r.forward_order.min_eigenvalue},
      {"h_minus_lift_max_eigenvalue", r.forward_order.max_eigenvalue},
      {"h_minus_lift_eigenvalues", vector_to_json(r.h_minus_lift_eigenvalues)},
      {"h_eigenvalues", vector_to_json(r.h_eigenvalues)},
      {"satisfied", r.satisfied},
  };
}

Json to_json(const SolverResult& r) {
  Json j = {
      {"primal_value", r.primal_value},
      {"dual_bound", r.dual_bound},
      {"gap", r.gap},
      {"iterations", r.iterations},
      {"converged", r.converged},
      {"method", to_string(r.method)},
  };
  j["x_opt"] = r.x_opt ? to_json(r.x_opt->op()) : Json(nullptr);
  j["dual_certificate"] = r.dual_certificate ? to_json(*r.dual_certificate) : Json(nullptr);
  return j;
}

Json to_json(const VerificationReport& r) {
  Json stages = Json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"name", s.name}, {"passed", s.passed}, {"residual", s.residual}});
  }
  return {
      {"basis_order", "sigma on [Z, Y], channel on [X, Y]; index = first * 2 + second"},
      {"stages", stages},
      {"relabeling_residual", r.relabeling_residual},
      {"x_min_eigenvalue", r.x_min_eigenvalue},
      {"x_tp_residual", r.x_tp_residual},
      {"objective_at_x", r.objective_at_x},
      {"optimal_value_fast_path", r.optimal_value_fast_path},
      {"optimal_value_solver", r.optimal_value_solver},
      {"solver_converged", r.solver_converged},
      {"dual_certificate_value", r.dual_certificate_value},
      {"sign_candidate_value", r.sign_candidate_value},
      {"certificate", to_json(r.certificate)},
      {"theorem_confirmed", r.theorem_confirmed},
      {"failing_stage", r.failing_stage.empty() ? Json(nullptr) : Json(r.failing_stage)},
  };
}

Json to_json(const SearchRecord& r) {
  Json x = r.x.dim() ? matrix_to_json(r.x.matrix()) : Json(nullptr);
  return {
      {"trial", r.trial},
      {"seed", r.seed},
      {"sigma_diag", r.sigma_diag},
      {"optimal_value", r.optimal_value},
      {"dual_bound", r.dual_bound},
      {"x", x},
      {"satisfied", r.satisfied},
      {"both_orders_fail", r.both_orders_fail},
      {"violation", r.violation},
      {"candidates", r.candidates},
      {"violating_candidates", r.violating_candidates},
  };
}

}  // namespace choicert

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

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "choicert/cli.hpp"
#include "choicert/instance_io.hpp"

using namespace choicert;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "choicert");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "choicert_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::filesystem::path write_instance(const std::string& name, const std::vector<double>& sigma,
                                     const std::vector<double>& x) {
  InstanceFile f;
  f.spaces = {{"X", 2}, {"Y", 2}, {"Z", 2}};
  f.rho = Matrix::Zero(4, 4);
  for (int a : {0, 3})
    for (int b : {0, 3}) f.rho(a, b) = 0.5;
  f.sigma = Eigen::Vector4d(sigma[0], sigma[1], sigma[2], sigma[3]).cast<Complex>().asDiagonal();
  f.x = Matrix(Eigen::Vector4d(x[0], x[1], x[2], x[3]).cast<Complex>().asDiagonal());
  const auto path = scratch(name);
  write_json(path, to_json(f));
  return path;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify-paper", "[cli]") {
  const Run r = run({"verify-paper"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("H eigenvalues: 0.5 0.5 0 -0.5\n") != std::string::npos);

  const Run j = run({"verify-paper", "--json"});
  CHECK(j.code == kExitOk);
  const Json parsed = Json::parse(j.out);
  CHECK(parsed["theorem_confirmed"].get<bool>());

  const Run bad = run({"verify-paper", "--perturb-sigma", "0.01"});
  CHECK(bad.code == kExitFailure);
  CHECK(bad.out.find("failing stage: delta") != std::string::npos);
}

TEST_CASE("certify", "[cli]") {
  const auto witness = write_instance("witness.json", {.55, .15, .2, .1}, {1, 0, 0.4, 0.6});
  CHECK(run({"certify", witness.string()}).code == kExitViolated);
  const auto fit = write_instance("fit.json", {0.15, 0.35, 0.45, 0.05}, {0.3, 0.7, 0.9, 0.1});
  CHECK(run({"certify", fit.string()}).code == kExitOk);
  const Run js = run({"certify", witness.string(), "--json"});
  CHECK(Json::parse(js.out)["satisfied"] == false);

  const auto broken = scratch("broken.json");
  std::ofstream(broken) << "{\"spaces\": ";
  CHECK(run({"certify", broken.string()}).code == kExitInput);
  CHECK(run({"certify", scratch("missing.json").string()}).code == kExitInput);
  const auto infeasible = write_instance("infeasible.json", {.55, .15, .2, .1}, {1, 1, 1, 1});
  CHECK(run({"certify", infeasible.string()}).code == kExitInput);
}

TEST_CASE("tolerance from the environment", "[cli]") {
  ::unsetenv("CHOICERT_TOL");
  CHECK(tolerance_from_env() == 1e-9);
  ::setenv("CHOICERT_TOL", "1e-6", 1);
  CHECK(tolerance_from_env() == 1e-6);
  ::setenv("CHOICERT_TOL", "nope", 1);
  CHECK_THROWS(tolerance_from_env());
  const auto witness = write_instance("witness_env.json", {.55, .15, .2, .1}, {1, 0, 0.4, 0.6});
  CHECK(run({"certify", witness.string()}).code == kExitInput);
  ::unsetenv("CHOICERT_TOL");
}

TEST_CASE("solve", "[cli]") {
  const auto witness = write_instance("witness_solve.json", {.55, .15, .2, .1}, {1, 0, 0.4, 0.6});
  const Run r = run({"solve", witness.string(), "--json"});
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["method"] == "l1_fast_path");
  CHECK(std::abs(j["primal_value"].get<double>() - 0.4) <= 1e-6);

  const auto out = scratch("solved.json");
  CHECK(run({"solve", witness.string(), "--no-fast-path", "--out", out.string()}).code == kExitOk);
  const InstanceFile solved = read_instance(out);
  REQUIRE(solved.x.has_value());

  const Run capped = run({"solve", witness.string(), "--no-fast-path", "--max-iters", "1"});
  CHECK(capped.code == kExitNotConverged);
  CHECK(run({"solve", witness.string(), "--eps", "-1"}).code == kExitInput);
}

TEST_CASE("search", "[cli]") {
  const auto a = scratch("search_a.json");
  const auto b = scratch("search_b.json");
  CHECK(run({"search", "--trials", "10", "--seed", "7", "--out", a.string()}).code == kExitOk);
  CHECK(run({"search", "--trials", "10", "--seed", "7", "--out", b.string()}).code == kExitOk);
  CHECK(slurp(a) == slurp(b));
  const Json j = Json::parse(slurp(a));
  CHECK(j["records"][0]["violation"].get<bool>());
  CHECK(run({"search", "--trials", "0"}).code == kExitInput);
  CHECK(run({"bogus"}).code == kExitInput);
  CHECK(run({}).code == kExitInput);
}

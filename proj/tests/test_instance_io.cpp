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

#include <limits>
#include <random>

#include "choicert/errors.hpp"
#include "choicert/instance_io.hpp"
#include "test_support.hpp"

using namespace choicert;

namespace {

InstanceFile random_file(std::mt19937_64& rng) {
  InstanceFile f;
  f.spaces = {{"X", 2}, {"Y", 3}, {"Z", 2}};
  f.rho = testing::random_density(rng, 4);
  f.sigma = testing::random_density(rng, 6);
  f.x = testing::random_matrix(rng, 6);
  return f;
}

}  // namespace

TEST_CASE("round trip is bit exact", "[instance_io]") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    InstanceFile f = random_file(rng);
    f.sigma(0, 1) = Complex(std::numeric_limits<double>::denorm_min(), -0.1);
    f.sigma(1, 0) = Complex(1e300, std::nextafter(1.0, 2.0));
    const InstanceFile g = parse_instance_text(to_json(f).dump());
    CHECK(g.spaces == f.spaces);
    CHECK(g.rho == f.rho);
    CHECK(g.sigma == f.sigma);
    REQUIRE(g.x.has_value());
    CHECK(*g.x == *f.x);
  }
}

TEST_CASE("parse rejects malformed files", "[instance_io]") {
  CHECK_THROWS_AS(parse_instance_text("{not json"), InputError);
  CHECK_THROWS_AS(parse_instance_text("[]"), InputError);
  CHECK_THROWS_AS(parse_instance_text(R"({"rho": [], "sigma": []})"), InputError);
  CHECK_THROWS_AS(parse_instance_text(R"({"spaces": {"X": 1, "Y": 1}, "rho": [[[1,0]]], "sigma": [[[1,0]]]})"),
                  InputError);
  CHECK_THROWS_AS(
      parse_instance_text(R"({"spaces": {"X": 1, "Y": 1, "Z": 0}, "rho": [[[1,0]]], "sigma": [[[1,0]]]})"),
      InputError);
  const std::string ok = R"({"spaces": {"X": 1, "Y": 1, "Z": 1}, "rho": [[[1,0]]], "sigma": [[[1,0]]]})";
  CHECK_NOTHROW(parse_instance_text(ok));
  CHECK_THROWS_AS(
      parse_instance_text(R"({"spaces": {"X": 1, "Y": 1, "Z": 1}, "rho": [[[1,0],[0,0]]], "sigma": [[[1,0]]]})"),
      InputError);
  CHECK_THROWS_AS(
      parse_instance_text(R"({"spaces": {"X": 1, "Y": 1, "Z": 1}, "rho": [[1]], "sigma": [[[1,0]]]})"),
      InputError);
  CHECK_THROWS_AS(
      parse_instance_text(R"({"spaces": {"X": 1, "Y": 1, "Z": 1}, "rho": [[["1",0]]], "sigma": [[[1,0]]]})"),
      InputError);
  CHECK_THROWS_AS(file_choi(parse_instance_text(ok)), InputError);
  CHECK_THROWS_AS(read_instance("/nonexistent/instance.json"), InputError);
}

TEST_CASE("file to problem and back", "[instance_io]") {
  std::mt19937_64 rng(72);
  InstanceFile f = random_file(rng);
  f.x.reset();
  const ProblemInstance inst = to_problem(f);
  CHECK(inst.dim_y() == 3);
  const InstanceFile g = to_instance_file(inst, std::nullopt);
  CHECK(g.rho == f.rho);
  CHECK(g.sigma == f.sigma);
  CHECK_FALSE(g.x.has_value());
}

TEST_CASE("report serialization", "[instance_io]") {
  const VerificationReport rep = verify_paper();
  const Json j = to_json(rep);
  CHECK(j["theorem_confirmed"].get<bool>());
  CHECK(j["failing_stage"].is_null());
  CHECK(j["stages"].size() == rep.stages.size());
  CHECK(j["certificate"]["order"] == "neither");
  CHECK(j["certificate"]["h_eigenvalues"].size() == 4);

  SearchOptions opts;
  opts.trials = 1;
  const Json s = to_json(search(opts)[0]);
  CHECK(s["violation"].get<bool>());
  CHECK(s["x"].size() == 4);
}

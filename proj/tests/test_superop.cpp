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

#include <random>

#include "choicert/errors.hpp"
#include "choicert/paperbench.hpp"
#include "choicert/superop.hpp"
#include "test_support.hpp"

using namespace choicert;
using Catch::Matchers::WithinAbs;

namespace {

// J(id) = sum_ij |i><j| (x) |i><j| on [Y, X].
LabeledOperator identity_choi(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d * d);
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m(static_cast<Eigen::Index>(i * d + i), static_cast<Eigen::Index>(j * d + j)) = 1.0;
  return LabeledOperator(m, {{"Y", d}, {"X", d}});
}

LabeledOperator x_witness() { return LabeledOperator::diagonal({{"X", 2}, {"Y", 2}}, {1, 0, 0.4, 0.6}); }

}  // namespace

TEST_CASE("choi_validate", "[superop]") {
  const ChoiMatrix j = choi_validate(x_witness(), "Y", "X");
  CHECK(distance(partial_trace(j.op(), "Y"), LabeledOperator::identity({{"X", 2}})) < 1e-15);
  CHECK(j.in_dim() == 2);
  CHECK(j.out_dim() == 2);
  CHECK_NOTHROW(choi_validate(identity_choi(3), "Y", "X"));

  try {
    choi_validate(LabeledOperator::identity({{"X", 2}, {"Y", 2}}), "Y", "X");
    FAIL("expected ChoiError");
  } catch (const ChoiError& e) {
    CHECK(e.kind() == ChoiError::Kind::kNotTracePreserving);
    CHECK_THAT(e.magnitude(), WithinAbs(std::sqrt(2.0), 1e-12));
  }
  try {
    choi_validate(LabeledOperator::diagonal({{"X", 2}, {"Y", 2}}, {1.5, -0.5, 1, 0}), "Y", "X");
    FAIL("expected ChoiError");
  } catch (const ChoiError& e) {
    CHECK(e.kind() == ChoiError::Kind::kNotPositive);
  }
  Matrix skew = Matrix::Identity(4, 4) * 0.5;
  skew(0, 1) = 0.3;
  CHECK_THROWS_AS(choi_validate(LabeledOperator(skew, {{"X", 2}, {"Y", 2}}), "Y", "X"), ChoiError);
  CHECK_THROWS_AS(choi_validate(x_witness(), "Y", "Q"), LabelError);
}

TEST_CASE("apply_choi", "[superop]") {
  std::mt19937_64 rng(21);
  const ChoiMatrix id = choi_validate(identity_choi(3), "Y", "X");
  const LabeledOperator a(testing::random_matrix(rng, 3), {{"X", 3}});
  CHECK(distance(apply_choi(id, a), a.relabeled("X", "Y")) <= 1e-14);

  const ChoiMatrix xp = choi_validate(x_witness(), "Y", "X");
  const auto out = apply_choi(xp, LabeledOperator::diagonal({{"X", 2}}, {1, 0}));
  CHECK(distance(out, LabeledOperator::diagonal({{"Y", 2}}, {1, 0})) <= 1e-15);

  const ChoiMatrix r = random_channel(4, 3, 2);
  const auto marg = apply_choi(r, LabeledOperator::identity({{"X", 3}}));
  CHECK_THAT(marg.trace().real(), WithinAbs(3.0, 1e-12));
  CHECK(distance(marg, partial_trace(r.op(), "X")) <= 1e-12);
}

TEST_CASE("superoperator matches apply_choi", "[superop][property]") {
  std::mt19937_64 rng(22);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ChoiMatrix j = random_channel(seed, 2, 3);
    const SuperOperator s = to_superoperator(j);
    const LabeledOperator a(testing::random_matrix(rng, 2), {{"X", 2}});
    CHECK((s.apply(a.matrix()) - apply_choi(j, a).matrix()).norm() <= 1e-12);
  }
}

TEST_CASE("psi for the maximally entangled state is half a relabeling", "[superop]") {
  const SuperOperator psi = psi_from_rho(maximally_entangled(2), "X", "Z");
  CHECK((psi.matrix() - 0.5 * Matrix::Identity(4, 4)).norm() <= 1e-15);
  CHECK(psi.in().name == "X");
  CHECK(psi.out().name == "Z");
  const SuperOperator adj = adjoint(psi);
  CHECK((adj.matrix() - 0.5 * Matrix::Identity(4, 4)).norm() <= 1e-15);
  CHECK(adj.in().name == "Z");
  CHECK(adj.out().name == "X");
}

TEST_CASE("psi for product and maximally mixed states", "[superop]") {
  std::mt19937_64 rng(23);
  const Matrix s = testing::random_density(rng, 2);
  const Matrix t = testing::random_density(rng, 3);
  const LabeledOperator rho(testing::kron(s, t), {{"X", 2}, {"Z", 3}});
  const SuperOperator psi = psi_from_rho(rho, "X", "Z");
  for (int k = 0; k < 5; ++k) {
    const Matrix a = testing::random_matrix(rng, 2);
    const Matrix expected = (s.transpose() * a).trace() * t;
    CHECK((psi.apply(a) - expected).norm() <= 1e-13);
  }

  const LabeledOperator mixed(Matrix::Identity(4, 4) / 4.0, {{"X", 2}, {"Z", 2}});
  const SuperOperator pm = psi_from_rho(mixed, "X", "Z");
  const Matrix a = testing::random_matrix(rng, 2);
  CHECK((pm.apply(a) - 0.25 * a.trace() * Matrix::Identity(2, 2)).norm() <= 1e-14);

  CHECK_THROWS_AS(psi_from_rho(LabeledOperator::identity({{"X", 2}, {"Z", 2}}), "X", "Z"), DensityError);
}

TEST_CASE("adjoint pairing", "[superop][property]") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const LabeledOperator rho(testing::random_density(rng, 6), {{"X", 2}, {"Z", 3}});
    const SuperOperator psi = psi_from_rho(rho, "X", "Z");
    const SuperOperator adj = adjoint(psi);
    const Matrix a = testing::random_matrix(rng, 2);
    const Matrix b = testing::random_matrix(rng, 3);
    const Complex lhs = (psi.apply(a).adjoint() * b).trace();
    const Complex rhs = (a.adjoint() * adj.apply(b)).trace();
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("channel identity against a direct entrywise expansion", "[superop][property]") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dx = 2 + trial % 2, dy = 2 + (trial / 2) % 2, dz = 2 + (trial / 4) % 2;
    const Matrix rho = testing::random_density(rng, static_cast<Eigen::Index>(dx * dz));
    const ChoiMatrix j = random_channel(1000 + static_cast<std::uint64_t>(trial), dx, dy);
    const SuperOperator psi = psi_from_rho(LabeledOperator(rho, {{"X", dx}, {"Z", dz}}), "X", "Z");
    const auto rhs = apply_on_factor(psi, j.op(), "X").permuted({"Y", "Z"});
    const Matrix lhs = testing::direct_channel_on_first(j.op().permuted({"Y", "X"}).matrix(), rho, dx, dy, dz);
    CHECK((lhs - rhs.matrix()).norm() <= 1e-11);
  }
}

TEST_CASE("half relabeling on random channels", "[superop][property]") {
  const SuperOperator psi = psi_from_rho(maximally_entangled(2), "X", "Z");
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ChoiMatrix j = random_channel(seed, 2, 2);
    const auto image = apply_on_factor(psi, j.op(), "X");
    CHECK(distance(image, 0.5 * j.op().relabeled("X", "Z")) <= 1e-12);
  }
}

TEST_CASE("apply_on_factor", "[superop]") {
  const SuperOperator psi = psi_from_rho(maximally_entangled(2), "X", "Z");
  const auto out = apply_on_factor(psi, x_witness(), "X");
  CHECK(out.label_names() == std::vector<std::string>{"Z", "Y"});
  CHECK(distance(out, 0.5 * x_witness().relabeled("X", "Z")) <= 1e-15);

  std::mt19937_64 rng(26);
  const LabeledOperator m(testing::random_matrix(rng, 6), {{"A", 3}, {"B", 2}});
  const auto same = apply_on_factor(SuperOperator::identity({"A", 3}, {"A", 3}), m, "A");
  CHECK(distance(same, m) <= 1e-15);
  CHECK_THROWS_AS(apply_on_factor(psi, m, "A"), DimensionError);
}

TEST_CASE("random channels", "[superop][property]") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const ChoiMatrix j = random_channel(seed, 1 + seed % 3, 1 + (seed / 3) % 3);
    CHECK_NOTHROW(choi_validate(j.op(), j.out_label(), j.in_label()));
  }
  const ChoiMatrix a = random_channel(77, 3, 2);
  const ChoiMatrix b = random_channel(77, 3, 2);
  CHECK(a.op().matrix() == b.op().matrix());
  CHECK(a.op().matrix() != random_channel(78, 3, 2).op().matrix());
}

TEST_CASE("require_density", "[superop]") {
  CHECK_NOTHROW(require_density(maximally_entangled(3)));
  CHECK_THROWS_AS(require_density(LabeledOperator::diagonal({{"A", 2}}, {1.2, -0.2})), DensityError);
  CHECK_THROWS_AS(require_density(LabeledOperator::diagonal({{"A", 2}}, {0.6, 0.6})), DensityError);
}

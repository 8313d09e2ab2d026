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

// Random inputs and small oracles shared by the tests.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "choicert/labeled_operator.hpp"

namespace choicert::testing {

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Complex(g(rng), g(rng));
  }
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  Matrix a = random_matrix(rng, n);
  return (a + a.adjoint()) / 2.0;
}

inline Matrix random_density(std::mt19937_64& rng, Eigen::Index n) {
  Matrix a = random_matrix(rng, n);
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  double total = 0.0;
  for (auto& x : v) {
    x = u(rng);
    total += x;
  }
  for (auto& x : v) x /= total;
  return v;
}

/// Entrywise (Phi (x) Id_Z)(rho) from Phi's Choi matrix J on [Y, X]:
/// rho = sum rho_{(x z),(x' z')} |x><x'| (x) |z><z'|, Phi(|x><x'|)_{y y'} = J_{(y x),(y' x')}.
/// Result on [Y, Z].
inline Matrix direct_channel_on_first(const Matrix& choi_yx, const Matrix& rho_xz, std::size_t dx,
                                      std::size_t dy, std::size_t dz) {
  const auto n = static_cast<Eigen::Index>(dy * dz);
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t y = 0; y < dy; ++y)
    for (std::size_t z = 0; z < dz; ++z)
      for (std::size_t y2 = 0; y2 < dy; ++y2)
        for (std::size_t z2 = 0; z2 < dz; ++z2) {
          Complex acc = 0.0;
          for (std::size_t x = 0; x < dx; ++x)
            for (std::size_t x2 = 0; x2 < dx; ++x2) {
              acc += choi_yx(static_cast<Eigen::Index>(y * dx + x), static_cast<Eigen::Index>(y2 * dx + x2)) *
                     rho_xz(static_cast<Eigen::Index>(x * dz + z), static_cast<Eigen::Index>(x2 * dz + z2));
            }
          out(static_cast<Eigen::Index>(y * dz + z), static_cast<Eigen::Index>(y2 * dz + z2)) = acc;
        }
  return out;
}

}  // namespace choicert::testing

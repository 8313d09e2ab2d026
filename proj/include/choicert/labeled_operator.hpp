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

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace choicert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// One tensor factor: a name and its Hilbert space dimension.
struct Subsystem {
  std::string name;
  std::size_t dim = 0;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

using Labels = std::vector<Subsystem>;

/**
 * Dense square complex matrix acting on a labelled tensor product space.
 *
 * The composite basis index is the mixed-radix number of the per-factor
 * indices with the FIRST label most significant, so for labels [Z, Y] the
 * basis vector |z>|y> sits at index z * dim(Y) + y.
 *
 * Every binary operation aligns its operands by label name, never by
 * position: adding an operator on [Y, Z] to one on [Z, Y] is well defined.
 */
class LabeledOperator {
 public:
  LabeledOperator() = default;
  LabeledOperator(Matrix entries, Labels labels);

  static LabeledOperator zero(Labels labels);
  static LabeledOperator identity(Labels labels);
  static LabeledOperator diagonal(Labels labels, const std::vector<double>& diag);

  const Matrix& matrix() const noexcept { return entries_; }
  const Labels& labels() const noexcept { return labels_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

  bool has_label(const std::string& name) const noexcept;
  std::size_t position_of(const std::string& name) const;
  std::size_t dim_of(const std::string& name) const;
  std::vector<std::string> label_names() const;

  /// Same operator with its tensor factors reordered to `order`.
  LabeledOperator permuted(const std::vector<std::string>& order) const;
  /// Same operator with the factors in `other`'s order (label sets must match).
  LabeledOperator aligned_to(const LabeledOperator& other) const;
  LabeledOperator relabeled(const std::string& from, const std::string& to) const;

  LabeledOperator adjoint() const;
  Complex trace() const { return entries_.trace(); }
  double frobenius_norm() const { return entries_.norm(); }
  bool is_diagonal(double tol = 0.0) const;

  /// Checks that `other` acts on the same factors (by name and dimension).
  bool same_space(const LabeledOperator& other) const noexcept;

  LabeledOperator& operator+=(const LabeledOperator& rhs);
  LabeledOperator& operator-=(const LabeledOperator& rhs);
  LabeledOperator& operator*=(Complex s);

  friend LabeledOperator operator+(LabeledOperator a, const LabeledOperator& b) { return a += b; }
  friend LabeledOperator operator-(LabeledOperator a, const LabeledOperator& b) { return a -= b; }
  friend LabeledOperator operator*(Complex s, LabeledOperator a) { return a *= s; }
  friend LabeledOperator operator*(double s, LabeledOperator a) { return a *= Complex(s, 0.0); }

 private:
  Matrix entries_;
  Labels labels_;
};

/// Matrix product a*b, with b aligned to a's label order.
LabeledOperator product(const LabeledOperator& a, const LabeledOperator& b);

/// Hilbert-Schmidt inner product Tr(a^dagger b), label-aligned.
Complex hs_inner(const LabeledOperator& a, const LabeledOperator& b);

/// Frobenius norm of a - b, label-aligned.
double distance(const LabeledOperator& a, const LabeledOperator& b);

/// Total dimension of a label list; throws LabelError on duplicate names.
std::size_t space_dim(const Labels& labels);

}  // namespace choicert

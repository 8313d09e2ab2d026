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

#include "choicert/labeled_operator.hpp"

#include <algorithm>
#include <set>

#include "choicert/errors.hpp"

namespace choicert {

std::size_t space_dim(const Labels& labels) {
  std::set<std::string> seen;
  std::size_t n = 1;
  for (const auto& s : labels) {
    if (s.dim == 0) throw DimensionError("subsystem '" + s.name + "' has dimension 0");
    if (!seen.insert(s.name).second) throw LabelError("duplicate label '" + s.name + "'");
    n *= s.dim;
  }
  return n;
}

LabeledOperator::LabeledOperator(Matrix entries, Labels labels)
    : entries_(std::move(entries)), labels_(std::move(labels)) {
  const std::size_t n = space_dim(labels_);
  if (entries_.rows() != entries_.cols()) {
    throw DimensionError("operator matrix is not square");
  }
  if (static_cast<std::size_t>(entries_.rows()) != n) {
    throw DimensionError("matrix size " + std::to_string(entries_.rows()) +
                         " does not match label dimension product " + std::to_string(n));
  }
}

LabeledOperator LabeledOperator::zero(Labels labels) {
  const auto n = static_cast<Eigen::Index>(space_dim(labels));
  return LabeledOperator(Matrix::Zero(n, n), std::move(labels));
}

LabeledOperator LabeledOperator::identity(Labels labels) {
  const auto n = static_cast<Eigen::Index>(space_dim(labels));
  return LabeledOperator(Matrix::Identity(n, n), std::move(labels));
}

LabeledOperator LabeledOperator::diagonal(Labels labels, const std::vector<double>& diag) {
  const auto n = static_cast<Eigen::Index>(space_dim(labels));
  if (static_cast<Eigen::Index>(diag.size()) != n) {
    throw DimensionError("diagonal has wrong length");
  }
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  return LabeledOperator(std::move(m), std::move(labels));
}

bool LabeledOperator::has_label(const std::string& name) const noexcept {
  return std::any_of(labels_.begin(), labels_.end(),
                     [&](const Subsystem& s) { return s.name == name; });
}

std::size_t LabeledOperator::position_of(const std::string& name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].name == name) return i;
  }
  throw LabelError("unknown label '" + name + "'");
}

std::size_t LabeledOperator::dim_of(const std::string& name) const {
  return labels_[position_of(name)].dim;
}

std::vector<std::string> LabeledOperator::label_names() const {
  std::vector<std::string> out;
  out.reserve(labels_.size());
  for (const auto& s : labels_) out.push_back(s.name);
  return out;
}

LabeledOperator LabeledOperator::permuted(const std::vector<std::string>& order) const {
  if (order.size() != labels_.size()) {
    throw LabelError("permutation must name every label exactly once");
  }
  std::vector<std::size_t> src(order.size());
  Labels new_labels;
  for (std::size_t k = 0; k < order.size(); ++k) {
    src[k] = position_of(order[k]);
    new_labels.push_back(labels_[src[k]]);
  }
  space_dim(new_labels);  // rejects repeated names in `order`

  bool identity_perm = true;
  for (std::size_t k = 0; k < src.size(); ++k) identity_perm = identity_perm && src[k] == k;
  if (identity_perm) return *this;

  // Strides of the original factors.
  const std::size_t nf = labels_.size();
  std::vector<std::size_t> old_stride(nf, 1);
  for (std::size_t k = nf; k-- > 1;) old_stride[k - 1] = old_stride[k] * labels_[k].dim;

  const std::size_t n = dim();
  std::vector<Eigen::Index> map(n);
  std::vector<std::size_t> digit(nf, 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t old_idx = 0;
    for (std::size_t k = 0; k < nf; ++k) old_idx += digit[k] * old_stride[src[k]];
    map[idx] = static_cast<Eigen::Index>(old_idx);
    for (std::size_t k = nf; k-- > 0;) {
      if (++digit[k] < new_labels[k].dim) break;
      digit[k] = 0;
    }
  }

  Matrix out(entries_.rows(), entries_.cols());
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) out(r, c) = entries_(map[r], map[c]);
  }
  return LabeledOperator(std::move(out), std::move(new_labels));
}

LabeledOperator LabeledOperator::aligned_to(const LabeledOperator& other) const {
  if (!same_space(other)) throw LabelError("operators act on different spaces");
  return permuted(other.label_names());
}

LabeledOperator LabeledOperator::relabeled(const std::string& from, const std::string& to) const {
  Labels labels = labels_;
  labels[position_of(from)].name = to;
  return LabeledOperator(entries_, std::move(labels));
}

LabeledOperator LabeledOperator::adjoint() const {
  return LabeledOperator(entries_.adjoint(), labels_);
}

bool LabeledOperator::is_diagonal(double tol) const {
  for (Eigen::Index c = 0; c < entries_.cols(); ++c) {
    for (Eigen::Index r = 0; r < entries_.rows(); ++r) {
      if (r != c && std::abs(entries_(r, c)) > tol) return false;
    }
  }
  return true;
}

bool LabeledOperator::same_space(const LabeledOperator& other) const noexcept {
  if (labels_.size() != other.labels_.size()) return false;
  for (const auto& s : labels_) {
    auto it = std::find_if(other.labels_.begin(), other.labels_.end(),
                           [&](const Subsystem& o) { return o.name == s.name; });
    if (it == other.labels_.end() || it->dim != s.dim) return false;
  }
  return true;
}

LabeledOperator& LabeledOperator::operator+=(const LabeledOperator& rhs) {
  entries_ += rhs.aligned_to(*this).entries_;
  return *this;
}

LabeledOperator& LabeledOperator::operator-=(const LabeledOperator& rhs) {
  entries_ -= rhs.aligned_to(*this).entries_;
  return *this;
}

LabeledOperator& LabeledOperator::operator*=(Complex s) {
  entries_ *= s;
  return *this;
}

LabeledOperator product(const LabeledOperator& a, const LabeledOperator& b) {
  return LabeledOperator(a.matrix() * b.aligned_to(a).matrix(), a.labels());
}

Complex hs_inner(const LabeledOperator& a, const LabeledOperator& b) {
  // Tr(a^dagger b) = sum_ij conj(a_ij) b_ij
  return a.matrix().conjugate().cwiseProduct(b.aligned_to(a).matrix()).sum();
}

double distance(const LabeledOperator& a, const LabeledOperator& b) {
  return (a.matrix() - b.aligned_to(a).matrix()).norm();
}

}  // namespace choicert

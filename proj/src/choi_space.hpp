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

#include <string>
#include <vector>

#include "choicert/errors.hpp"
#include "choicert/labeled_operator.hpp"

namespace choicert::detail {

// Raw-matrix view of a space split as (Y factor) x (everything else), for the
// inner loops of the solvers. Index i of the full space maps to the pair
// (rest_of[i], y_of[i]).
class ChoiSpace {
 public:
  ChoiSpace(const Labels& labels, const std::string& y_label);

  Eigen::Index n() const { return n_; }
  Eigen::Index rest_dim() const { return m_; }
  Eigen::Index y_dim() const { return dy_; }
  Eigen::Index rest_of(Eigen::Index i) const { return rest_of_[static_cast<std::size_t>(i)]; }
  Eigen::Index y_of(Eigen::Index i) const { return y_of_[static_cast<std::size_t>(i)]; }

  /// 1_Y (x) a
  Matrix lift(const Matrix& a) const;
  /// Tr_Y x
  Matrix trace_y(const Matrix& x) const;
  /// x - (1/d_Y) lift(Tr_Y x - 1)
  Matrix project_tp(const Matrix& x) const;

 private:
  Eigen::Index n_ = 0;
  Eigen::Index m_ = 0;
  Eigen::Index dy_ = 0;
  std::vector<Eigen::Index> rest_of_;
  std::vector<Eigen::Index> y_of_;
};

inline ChoiSpace::ChoiSpace(const Labels& labels, const std::string& y_label) {
  std::size_t ypos = labels.size();
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k].name == y_label) ypos = k;
  }
  n_ = static_cast<Eigen::Index>(space_dim(labels));
  if (ypos == labels.size()) throw LabelError("unknown label '" + y_label + "'");
  dy_ = static_cast<Eigen::Index>(labels[ypos].dim);
  m_ = n_ / dy_;
  rest_of_.resize(static_cast<std::size_t>(n_));
  y_of_.resize(static_cast<std::size_t>(n_));
  std::vector<std::size_t> digit(labels.size(), 0);
  for (Eigen::Index i = 0; i < n_; ++i) {
    Eigen::Index rest = 0;
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (k == ypos) continue;
      rest = rest * static_cast<Eigen::Index>(labels[k].dim) + static_cast<Eigen::Index>(digit[k]);
    }
    rest_of_[static_cast<std::size_t>(i)] = rest;
    y_of_[static_cast<std::size_t>(i)] = static_cast<Eigen::Index>(digit[ypos]);
    for (std::size_t k = labels.size(); k-- > 0;) {
      if (++digit[k] < labels[k].dim) break;
      digit[k] = 0;
    }
  }
}

inline Matrix ChoiSpace::lift(const Matrix& a) const {
  Matrix out = Matrix::Zero(n_, n_);
  for (Eigen::Index j = 0; j < n_; ++j) {
    for (Eigen::Index i = 0; i < n_; ++i) {
      if (y_of(i) == y_of(j)) out(i, j) = a(rest_of(i), rest_of(j));
    }
  }
  return out;
}

inline Matrix ChoiSpace::trace_y(const Matrix& x) const {
  Matrix out = Matrix::Zero(m_, m_);
  for (Eigen::Index j = 0; j < n_; ++j) {
    for (Eigen::Index i = 0; i < n_; ++i) {
      if (y_of(i) == y_of(j)) out(rest_of(i), rest_of(j)) += x(i, j);
    }
  }
  return out;
}

inline Matrix ChoiSpace::project_tp(const Matrix& x) const {
  const Matrix excess = trace_y(x) - Matrix::Identity(m_, m_);
  return x - lift(excess) / static_cast<double>(dy_);
}

}  // namespace choicert::detail

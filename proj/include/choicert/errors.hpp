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

#include <stdexcept>
#include <string>

namespace choicert {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown, duplicate or mismatched subsystem labels.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// Shapes or subsystem dimensions that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a Hermitian operand received something else.
class NotHermitianError : public Error {
 public:
  NotHermitianError(const std::string& what, double asymmetry)
      : Error(what), asymmetry_(asymmetry) {}
  /// Frobenius norm of A - A^dagger.
  double asymmetry() const noexcept { return asymmetry_; }

 private:
  double asymmetry_;
};

/// A Choi matrix fails complete positivity or trace preservation.
class ChoiError : public Error {
 public:
  enum class Kind { kNotHermitian, kNotPositive, kNotTracePreserving };
  ChoiError(const std::string& what, Kind kind, double magnitude)
      : Error(what), kind_(kind), magnitude_(magnitude) {}
  Kind kind() const noexcept { return kind_; }
  /// Size of the violation: |min eigenvalue| or ||Tr_out(J) - 1||_F.
  double magnitude() const noexcept { return magnitude_; }

 private:
  Kind kind_;
  double magnitude_;
};

/// Input is not a valid density operator.
class DensityError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine ran out of iterations.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double lower, double upper)
      : Error(what), lower_(lower), upper_(upper) {}
  /// Best known bracket (or residual pair) at the time of failure.
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

/// The closed-form diagonal path does not apply to this instance.
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance file or command-line input.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace choicert

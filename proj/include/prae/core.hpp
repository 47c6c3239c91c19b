// Copyright 2026 The prae Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace prae {

/// Scalar field of the signal space: real (symmetric measurements) or
/// complex (Hermitian measurements).
enum class Field { Real, Complex };

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// A caller passed arguments that violate an operation's contract.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input is well-formed but fails a mathematical precondition
/// (e.g. a matrix that is not rank <= 2 handed to psi_inverse).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested method does not apply to this input (wrong field, budget).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. The message carries a field path or line/column.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view to_string(Field field);
Field field_from_string(std::string_view text);

}  // namespace prae

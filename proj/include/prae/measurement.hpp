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

#include "prae/core.hpp"
#include "prae/ensembles.hpp"
#include "prae/linalg.hpp"

namespace prae {

/// (x^* A_1 x, ..., x^* A_N x).
using MeasurementVector = RealVector;

/// Throws ParameterError unless x has length d and, for REAL ensembles,
/// zero imaginary part.
void check_signal(const Ensemble& ensemble, const Vector& x);

/// Re(x^* A x); throws PreconditionError when the imaginary part is not
/// negligible (a non-self-adjoint A slipped through).
double quadratic_form(const Matrix& a, const Vector& x);

MeasurementVector measure(const Ensemble& ensemble, const Vector& x);

/// | x^*Ax - y^*Ay - 4 Re(v^* A u) | with v = (x+y)/2, u = (x-y)/2.
/// Zero in exact arithmetic.
double polarization_gap(const Matrix& a, const Vector& x, const Vector& y);

/// Natural magnitude of the terms in polarization_gap, for relative checks.
double polarization_scale(const Matrix& a, const Vector& x, const Vector& y);

/// Real Jacobian of the measurement map, one column per measurement.
/// REAL: d x N with columns 2 A_j x. COMPLEX: 2d x N with columns 2 F_j u,
/// F_j = [[B_j, -C_j], [C_j, B_j]], u = (Re x; Im x).
struct JacobianMatrix {
  RealMatrix values;
  int rank = 0;
  double tolerance = linalg::kRankTolerance;
};

JacobianMatrix jacobian(const Ensemble& ensemble, const Vector& x,
                        double rel_tol = linalg::kRankTolerance);

/// Full rank of the Jacobian on the quotient space: d (REAL), 2d - 1 (COMPLEX).
int regular_rank(Field field, int d);

struct Regularity {
  bool regular = false;
  int rank = 0;
};

/// Throws ParameterError for x = 0 (always degenerate).
Regularity is_regular(const Ensemble& ensemble, const Vector& x,
                      double rel_tol = linalg::kRankTolerance);

/// min over unimodular alpha of ||x - alpha y||; alpha = +-1 for REAL.
double phase_distance(const Vector& x, const Vector& y, Field field);

}  // namespace prae

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

#include "prae/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace prae {

void check_signal(const Ensemble& ensemble, const Vector& x) {
  if (x.size() != ensemble.dim()) {
    std::ostringstream msg;
    msg << "signal has length " << x.size() << ", ensemble dimension is " << ensemble.dim();
    throw ParameterError(msg.str());
  }
  if (ensemble.field() == Field::Real && x.size() > 0 && x.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw ParameterError("complex signal passed to a REAL ensemble");
  }
}

double quadratic_form(const Matrix& a, const Vector& x) {
  const Scalar q = x.dot(a * x);  // conjugates the first argument
  const double bound = 1e-12 * (1.0 + x.squaredNorm() * a.norm());
  if (std::abs(q.imag()) >= bound) {
    std::ostringstream msg;
    msg << "quadratic form has imaginary part " << q.imag() << "; matrix is not self-adjoint";
    throw PreconditionError(msg.str());
  }
  return q.real();
}

MeasurementVector measure(const Ensemble& ensemble, const Vector& x) {
  check_signal(ensemble, x);
  MeasurementVector b(ensemble.size());
  for (int j = 0; j < ensemble.size(); ++j) b(j) = quadratic_form(ensemble[j], x);
  return b;
}

double polarization_gap(const Matrix& a, const Vector& x, const Vector& y) {
  const Vector v = (x + y) * 0.5;
  const Vector u = (x - y) * 0.5;
  const double lhs = x.dot(a * x).real() - y.dot(a * y).real();
  const double rhs = 4.0 * v.dot(a * u).real();
  return std::abs(lhs - rhs);
}

double polarization_scale(const Matrix& a, const Vector& x, const Vector& y) {
  return a.norm() * (x.squaredNorm() + y.squaredNorm());
}

int regular_rank(Field field, int d) { return field == Field::Real ? d : 2 * d - 1; }

JacobianMatrix jacobian(const Ensemble& ensemble, const Vector& x, double rel_tol) {
  check_signal(ensemble, x);
  const int d = ensemble.dim();
  const int n = ensemble.size();
  JacobianMatrix jac;
  jac.tolerance = rel_tol;
  if (ensemble.field() == Field::Real) {
    const RealVector xr = x.real();
    jac.values.resize(d, n);
    for (int j = 0; j < n; ++j) jac.values.col(j) = 2.0 * (ensemble[j].real() * xr);
  } else {
    const RealVector u = linalg::realify(x);
    jac.values.resize(2 * d, n);
    for (int j = 0; j < n; ++j) jac.values.col(j) = 2.0 * (linalg::realify(ensemble[j]) * u);
  }
  jac.rank = linalg::numerical_rank(jac.values, rel_tol);
  return jac;
}

Regularity is_regular(const Ensemble& ensemble, const Vector& x, double rel_tol) {
  if (x.size() > 0 && x.norm() == 0.0) {
    throw ParameterError("is_regular: x = 0 is always a degenerate point");
  }
  const JacobianMatrix jac = jacobian(ensemble, x, rel_tol);
  return Regularity{jac.rank == regular_rank(ensemble.field(), ensemble.dim()), jac.rank};
}

double phase_distance(const Vector& x, const Vector& y, Field field) {
  if (x.size() != y.size()) throw ParameterError("phase_distance: length mismatch");
  if (field == Field::Real) return std::min((x - y).norm(), (x + y).norm());
  // Equals sqrt(|x|^2 + |y|^2 - 2|y^*x|); aligning the phase first avoids
  // the cancellation of that closed form when x and y are close.
  const Scalar overlap = y.dot(x);
  const double mag = std::abs(overlap);
  const Scalar alpha = mag > 0.0 ? overlap / mag : Scalar(1.0);
  return (x - alpha * y).norm();
}

}  // namespace prae

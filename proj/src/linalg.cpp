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

#include "prae/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace prae {

std::string_view to_string(Field field) { return field == Field::Real ? "R" : "C"; }

Field field_from_string(std::string_view text) {
  if (text == "R" || text == "real" || text == "REAL") return Field::Real;
  if (text == "C" || text == "complex" || text == "COMPLEX") return Field::Complex;
  throw ParameterError("unknown field '" + std::string(text) + "' (expected R or C)");
}

namespace linalg {
namespace {

template <class Values>
int count_above(const Values& sv, double rel_tol) {
  if (sv.size() == 0) return 0;
  const double top = sv.maxCoeff();
  if (!(top > 0.0)) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * top) ++rank;
  }
  return rank;
}

template <class M>
M null_space_impl(const M& m, double rel_tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return M::Identity(n, n);
  Eigen::JacobiSVD<M> svd(m, Eigen::ComputeFullV);
  const int rank = count_above(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(n - rank);
}

}  // namespace

int numerical_rank(const RealMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  return count_above(Eigen::JacobiSVD<RealMatrix>(m).singularValues(), rel_tol);
}

int numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  return count_above(Eigen::JacobiSVD<Matrix>(m).singularValues(), rel_tol);
}

RealMatrix null_space(const RealMatrix& m, double rel_tol) { return null_space_impl(m, rel_tol); }

Matrix null_space(const Matrix& m, double rel_tol) { return null_space_impl(m, rel_tol); }

RealMatrix orthogonal_complement(const RealMatrix& cols, double rel_tol) {
  return null_space_impl(RealMatrix(cols.transpose()), rel_tol);
}

RealVector realify(const Vector& x) {
  const Eigen::Index d = x.size();
  RealVector u(2 * d);
  u.head(d) = x.real();
  u.tail(d) = x.imag();
  return u;
}

Vector complexify(const RealVector& u) {
  const Eigen::Index d = u.size() / 2;
  Vector x(d);
  x.real() = u.head(d);
  x.imag() = u.tail(d);
  return x;
}

RealMatrix realify(const Matrix& a) {
  const Eigen::Index d = a.rows();
  RealMatrix f(2 * d, 2 * d);
  const RealMatrix b = a.real();
  const RealMatrix c = a.imag();
  f.topLeftCorner(d, d) = b;
  f.topRightCorner(d, d) = -c;
  f.bottomLeftCorner(d, d) = c;
  f.bottomRightCorner(d, d) = b;
  return f;
}

double self_adjoint_defect(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double imaginary_defect(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.imag().cwiseAbs().maxCoeff();
}

Vector canonical_phase(const Vector& x, double threshold) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x(i));
    if (mag > threshold) return x * (std::conj(x(i)) / mag);
  }
  return x;
}

}  // namespace linalg
}  // namespace prae

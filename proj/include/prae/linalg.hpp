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

/// Small dense helpers shared by every module: numerical rank, orthonormal
/// null spaces and the complex-to-real realification.
namespace prae::linalg {

/// Default relative cutoff: singular values above tol * sigma_max count.
inline constexpr double kRankTolerance = 1e-10;

int numerical_rank(const RealMatrix& m, double rel_tol = kRankTolerance);
int numerical_rank(const Matrix& m, double rel_tol = kRankTolerance);

/// Orthonormal basis (as columns) of {v : m v = 0}. Zero columns means the
/// kernel is trivial.
RealMatrix null_space(const RealMatrix& m, double rel_tol = kRankTolerance);
Matrix null_space(const Matrix& m, double rel_tol = kRankTolerance);

/// Orthonormal basis of span(cols)^perp.
RealMatrix orthogonal_complement(const RealMatrix& cols, double rel_tol = kRankTolerance);

/// (Re x; Im x) stacked.
RealVector realify(const Vector& x);
Vector complexify(const RealVector& u);

/// The real 2d x 2d block [[B, -C], [C, B]] of A = B + iC.
RealMatrix realify(const Matrix& a);

/// max |a(j,k) - conj(a(k,j))|.
double self_adjoint_defect(const Matrix& a);
/// max |Im a(j,k)|.
double imaginary_defect(const Matrix& a);

/// Rescales by a unimodular factor so the first entry with modulus above
/// `threshold` is real and positive.
Vector canonical_phase(const Vector& x, double threshold = 1e-12);

}  // namespace prae::linalg

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

#include <cstdint>
#include <optional>
#include <utility>

#include "prae/core.hpp"
#include "prae/ensembles.hpp"
#include "prae/witness.hpp"

namespace prae {

/// True iff xx*, yy*, xy*, yx* are linearly independent in C^{d x d}
/// (numerical rank 4 of the stacked vectorizations). Requires d >= 2.
bool quadruple_independence(const Vector& x, const Vector& y, double rel_tol = 1e-10);

/// (x, y, lambda, mu) with x, y orthonormal and lambda, mu >= 0.
struct Rank2Signature {
  Vector x;
  Vector y;
  double lambda = 0.0;
  double mu = 0.0;

  /// Validates orthonormality (1e-12) and signs; lambda = mu = 0 is
  /// rejected here, use zero() for the degenerate signature.
  static Rank2Signature make(Vector x, Vector y, double lambda, double mu);
  /// lambda = mu = 0 with x = e_1, y = e_2.
  static Rank2Signature zero(int d);
};

/// Unimodular omega_1..3 and 0 <= beta < 1.
struct OrbitParams {
  Scalar omega1{1.0, 0.0};
  Scalar omega2{1.0, 0.0};
  Scalar omega3{1.0, 0.0};
  double beta = 0.0;

  static OrbitParams make(Scalar omega1, Scalar omega2, Scalar omega3, double beta);
};

/// lambda^2 xx* - mu^2 yy*.
Matrix psi(const Rank2Signature& sig);

/// Inverse of psi on Hermitian matrices of rank <= 2 with at most one
/// positive and one negative eigenvalue. Eigenvectors are returned with the
/// first entry above 1e-12 in modulus made real positive.
Rank2Signature psi_inverse(const Matrix& b);

/// (z, w) with zz* - ww* = lambda^2 xx* - mu^2 yy*:
///   z = (w1 lambda x + w2 beta mu y) / sqrt(1 - beta^2)
///   w = (w3 beta lambda x + conj(w1) w2 w3 mu y) / sqrt(1 - beta^2)
std::pair<Vector, Vector> rank2_orbit(const Rank2Signature& sig, const OrbitParams& params);

inline constexpr int kGramRetryBudget = 32;

struct GramWitnessResult {
  std::optional<CollisionWitness> witness;
  int attempts = 0;
};

/// Collision for the rank-one frame [I_d, G] built from u with u_1 = 0 and
/// a direction v of the polarization kernel with v_1 != 0. Returns nullopt
/// when no admissible v exists for this u.
std::optional<CollisionWitness> gram_collision_witness_from(const Matrix& g, const Vector& u);

/// Draws u from substream (seed, Witness, attempt) until a witness is found
/// or the retry budget is spent. G is d x (d - 1).
GramWitnessResult gram_collision_witness(const Matrix& g, std::uint64_t seed,
                                         int budget = kGramRetryBudget);

/// Reduces a COMPLEX frame with d <= N <= 2d - 1 whose first d columns are
/// invertible to [I_d, G] and maps the Gram witness back.
GramWitnessResult frame_collision_witness(const Frame& frame, std::uint64_t seed,
                                          int budget = kGramRetryBudget);

/// Witness (u + v, u - v) for v in the bilinear (REAL) or polarization
/// (COMPLEX) kernel at u. Throws ParameterError if u or v vanishes or v is
/// not in the kernel.
CollisionWitness kernel_collision(const Ensemble& ensemble, const Vector& u, const Vector& v);

}  // namespace prae

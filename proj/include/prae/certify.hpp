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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prae/core.hpp"
#include "prae/ensembles.hpp"
#include "prae/linalg.hpp"
#include "prae/parallel.hpp"
#include "prae/rng.hpp"
#include "prae/witness.hpp"

namespace prae {

enum class Verdict { PrAe, NotPrAe, LikelyPrAe, LikelyNotPrAe, Inconclusive };

std::string_view to_string(Verdict verdict);

/// Covering pair (I, J) of measurement indices (0-based) together with the
/// dimensions of V_I^perp, V_J^perp and their sum.
struct SubsetPairWitness {
  std::vector<int> I;
  std::vector<int> J;
  int dim_I_perp = 0;
  int dim_J_perp = 0;
  int dim_sum = 0;
};

struct CertStats {
  int trials = 0;
  int failures = 0;
  std::optional<std::uint64_t> seed;
  std::map<std::string, double> values;
};

/// Outcome of one certification run. Only exact methods may return PrAe or
/// NotPrAe; sampling methods return Likely* or Inconclusive.
struct CertReport {
  Verdict verdict = Verdict::Inconclusive;
  std::string method;
  std::vector<SubsetPairWitness> subset_witnesses;
  std::vector<CollisionWitness> collisions;
  CertStats stats;
  std::map<std::string, double> tolerances;
};

// ---------------------------------------------------------------------------
// Exact checker for real rank-one frames.
//
// A real frame fails PR-ae iff some covering pair (I, J) has
// V_I^perp + V_J^perp = R^d with both complements nonzero: then every
// x = p + q (p in V_I^perp, q in V_J^perp) collides with y = p - q.
// Shrinking J to the complement of I only enlarges V_J^perp, so it is
// enough to scan the 2^(N-1) partitions (by the I <-> J symmetry).
// ---------------------------------------------------------------------------

inline constexpr int kExactEnumerationBudget = 24;

/// Dimensions for the partition whose I-membership is the bitmask `mask`.
SubsetPairWitness partition_dimensions(const RealMatrix& frame, std::uint64_t mask,
                                       double rel_tol = linalg::kRankTolerance);

/// Dimensions for an arbitrary covering pair (I, J).
SubsetPairWitness pair_dimensions(const RealMatrix& frame, const std::vector<int>& I,
                                  const std::vector<int>& J,
                                  double rel_tol = linalg::kRankTolerance);

/// True if the pair yields a non-trivial collision family.
bool is_collision_pair(const SubsetPairWitness& w, int d);

/// Smallest partition mask that is a collision pair. The serial version
/// scans in order and stops early; the OpenMP version scans everything and
/// min-reduces, so both return the same mask.
std::optional<std::uint64_t> find_collision_partition_serial(const RealMatrix& frame);
std::optional<std::uint64_t> find_collision_partition_omp(const RealMatrix& frame, int threads);

/// Requires a REAL frame with N <= 24.
CertReport real_rank_one_exact(const Frame& frame, const Exec& exec = {});

/// x = p + q, y = p - q with random p in V_I^perp, q in V_J^perp.
CollisionWitness partition_collision(const Frame& frame, const SubsetPairWitness& pair, Rng& rng);

/// Every d-column submatrix has numerical rank d. Requires N >= d.
bool full_spark(const Frame& frame, double rel_tol = linalg::kRankTolerance);

// ---------------------------------------------------------------------------
// Kernel probes.
// ---------------------------------------------------------------------------

/// Orthonormal basis (d x k) of {v in R^d : v^T A_j u = 0 for all j}.
RealMatrix bilinear_kernel(const Ensemble& ensemble, const Vector& u,
                           double rel_tol = linalg::kRankTolerance);

/// Orthonormal basis (2d x k, coordinates (Re v; Im v)) of
/// {v : Re(v^* A_j u) = 0 for all j}. Always contains the direction iu.
RealMatrix polarization_kernel(const Ensemble& ensemble, const Vector& u,
                               double rel_tol = linalg::kRankTolerance);

/// Kernel directions that can produce a non-trivial collision at u: the
/// bilinear kernel for REAL ensembles, the polarization kernel with the
/// forced direction iu projected out for COMPLEX ones. Complex columns.
Matrix collision_directions(const Ensemble& ensemble, const Vector& u,
                            double rel_tol = linalg::kRankTolerance);

// ---------------------------------------------------------------------------
// Sampling certificates.
// ---------------------------------------------------------------------------

/// Samples random points and computes Jacobian ranks. One regular point
/// shows the degenerate set is null; all points degenerate with the same
/// deficiency gives LikelyNotPrAe.
CertReport jacobian_rank_survey(const Ensemble& ensemble, int samples, std::uint64_t seed,
                                const Exec& exec = {}, double rel_tol = linalg::kRankTolerance);

struct TangentPoint {
  Vector x;
  Vector y;
  double residual = 0.0;  // max_j |x^T A_j y| for unit x, y
  int dimension = 0;      // 2d - rank of the constraint Jacobian
};

/// Tries to land on a point of Y_A = {(x, y) : x^T A_j y = 0} with x, y
/// nonzero, starting from substream (seed, Tangent, attempt).
std::optional<TangentPoint> find_incidence_point(const Ensemble& ensemble, std::uint64_t seed,
                                                 int attempt, double tangent_tol = 1e-8);

/// Max tangent dimension of Y_A over successful attempts against the d - 1
/// threshold. REAL ensembles only.
CertReport tangent_dimension_probe(const Ensemble& ensemble, int attempts, std::uint64_t seed,
                                   const Exec& exec = {});

struct MonteCarloOptions {
  int trials = 200;
  int restarts = 4;
  std::uint64_t seed = 0;
  double separation_floor = 0.05;  // relative to ||x||
  double collision_tol = 1e-8;     // relative to ||b||
  /// Accepts a collision only if ||m(y) - m(x)|| < ratio * sigma_r(J(y)) * separation.
  double certificate_ratio = 1e-3;
  int max_iters = 200;
  /// Optional extra candidate pairs per trial (e.g. constructive witnesses).
  std::function<std::optional<std::pair<Vector, Vector>>(Rng&)> injector;
};

/// Estimates the collision rate. Per trial: a kernel-based pair at a random
/// u, optional injected candidates, and multi-start least squares for a
/// second preimage of b = m(x).
CertReport monte_carlo_injectivity(const Ensemble& ensemble, const MonteCarloOptions& options,
                                   const Exec& exec = {});

}  // namespace prae

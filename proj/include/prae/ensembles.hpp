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
#include <span>
#include <string>
#include <vector>

#include "prae/core.hpp"
#include "prae/parallel.hpp"

namespace prae {

/// Provenance label carried by every ensemble.
enum class EnsembleKind {
  Hankel,
  MinimalComplex,
  RandomSymmetric,
  RandomHermitian,
  RandomProjection,
  RankOneFrame,
  Ingested,
};

std::string_view to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(std::string_view text);

/// Ordered tuple (A_1, ..., A_N) of d x d self-adjoint matrices over one
/// field. The constructor enforces shapes only; self-adjointness, ranks
/// and projection structure are checked by validate() so that ingested
/// files can be diagnosed rather than rejected outright.
class Ensemble {
 public:
  Ensemble(Field field, int d, std::vector<Matrix> matrices, EnsembleKind kind,
           std::optional<std::vector<int>> ranks = std::nullopt,
           std::optional<std::uint64_t> seed = std::nullopt);

  Field field() const { return field_; }
  int dim() const { return d_; }
  int size() const { return static_cast<int>(matrices_.size()); }
  EnsembleKind kind() const { return kind_; }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  const Matrix& operator[](int j) const { return matrices_[static_cast<std::size_t>(j)]; }
  const std::optional<std::vector<int>>& ranks() const { return ranks_; }
  const std::optional<std::uint64_t>& seed() const { return seed_; }

  /// Largest Frobenius norm among the matrices (scale for tolerances).
  double max_norm() const;

 private:
  Field field_;
  int d_;
  std::vector<Matrix> matrices_;
  EnsembleKind kind_;
  std::optional<std::vector<int>> ranks_;
  std::optional<std::uint64_t> seed_;
};

/// Vectors f_1..f_N in H^d stored as the columns of a d x N matrix.
/// Zero columns are rejected.
class Frame {
 public:
  Frame(Field field, Matrix columns);

  Field field() const { return field_; }
  int dim() const { return static_cast<int>(columns_.rows()); }
  int size() const { return static_cast<int>(columns_.cols()); }
  const Matrix& columns() const { return columns_; }
  /// Real part of the columns; only meaningful for REAL frames.
  RealMatrix real_columns() const { return columns_.real(); }

 private:
  Field field_;
  Matrix columns_;
};

/// A_t has ones where j + k = t + 1 (1-based), t = 1..d.
Ensemble hankel_ensemble(int d);

/// The 2d - 1 Hermitian matrices e1 e1^T, e1 ej^T + ej e1^T and
/// i e1 ej^T - i ej e1^T for j = 2..d.
Ensemble minimal_complex_ensemble(int d);

enum class RandomKind { General, Projection };

/// A_j = Q diag(g) Q^* (General) or Q Q^* (Projection), where Q is a
/// Gaussian d x ranks[j] block orthonormalized by QR and g is standard
/// normal. Matrix j draws only from substream (seed, Ensemble, j).
Ensemble random_ensemble(Field field, int d, int n, std::span<const int> ranks, RandomKind kind,
                         std::uint64_t seed, const Exec& exec = {});

/// Same as above with every rank equal to `rank` (0 means full rank d).
Ensemble random_ensemble(Field field, int d, int n, int rank, RandomKind kind, std::uint64_t seed,
                         const Exec& exec = {});

/// A_j = f_j f_j^*.
Ensemble rank_one_from_frame(const Frame& frame);

/// Recovers f_j from rank-one positive semidefinite A_j = f_j f_j^*, up to
/// phase. Returns nullopt if some matrix is not of that form.
std::optional<Frame> frame_from_rank_one(const Ensemble& ensemble, double rel_tol = 1e-10);

struct MatrixDiagnostics {
  double self_adjoint_defect = 0.0;
  double imaginary_defect = 0.0;  // only constrained for REAL ensembles
  int rank = 0;
  std::optional<double> projection_defect;  // ||P^2 - P||_F for projection kinds
};

struct ValidationReport {
  bool pass = true;
  std::vector<MatrixDiagnostics> matrices;
  std::vector<std::string> failures;
};

/// Checks every ensemble invariant and returns per-matrix diagnostics.
/// Never throws on a bad ensemble; failures are listed in the report.
ValidationReport validate(const Ensemble& ensemble);

inline constexpr double kSelfAdjointTolerance = 1e-12;
inline constexpr double kProjectionTolerance = 1e-10;

}  // namespace prae

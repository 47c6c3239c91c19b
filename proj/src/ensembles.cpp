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

#include "prae/ensembles.hpp"

#include <cmath>
#include <sstream>

#include "prae/linalg.hpp"
#include "prae/rng.hpp"

namespace prae {
namespace {

void require_dim(int d, const char* what) {
  if (d < 1) throw ParameterError(std::string(what) + ": dimension must be >= 1");
}

// Averaging with the adjoint makes (j,k) and (k,j) exact conjugates and the
// diagonal exactly real.
Matrix symmetrize(const Matrix& a) { return (a + a.adjoint()) * 0.5; }

Matrix random_factor_matrix(Field field, int d, int rank, RandomKind kind, Rng& rng) {
  const Matrix gauss = rng.gaussian_matrix(field, d, rank);
  Eigen::HouseholderQR<Matrix> qr(gauss);
  const Matrix q = qr.householderQ() * Matrix::Identity(d, rank);
  Matrix a;
  if (kind == RandomKind::Projection) {
    a = q * q.adjoint();
  } else {
    Eigen::VectorXd spectrum(rank);
    for (int i = 0; i < rank; ++i) {
      double g = 0.0;
      while (g == 0.0) g = rng.normal();
      spectrum(i) = g;
    }
    a = q * spectrum.cast<Scalar>().asDiagonal() * q.adjoint();
  }
  a = symmetrize(a);
  if (field == Field::Real) a = a.real().cast<Scalar>();
  return a;
}

}  // namespace

std::string_view to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Hankel:
      return "hankel";
    case EnsembleKind::MinimalComplex:
      return "minimal-complex";
    case EnsembleKind::RandomSymmetric:
      return "random-symmetric";
    case EnsembleKind::RandomHermitian:
      return "random-hermitian";
    case EnsembleKind::RandomProjection:
      return "random-projection";
    case EnsembleKind::RankOneFrame:
      return "rank-one-frame";
    case EnsembleKind::Ingested:
      return "ingested";
  }
  return "ingested";
}

EnsembleKind ensemble_kind_from_string(std::string_view text) {
  for (auto kind :
       {EnsembleKind::Hankel, EnsembleKind::MinimalComplex, EnsembleKind::RandomSymmetric,
        EnsembleKind::RandomHermitian, EnsembleKind::RandomProjection, EnsembleKind::RankOneFrame,
        EnsembleKind::Ingested}) {
    if (to_string(kind) == text) return kind;
  }
  throw ParameterError("unknown ensemble kind '" + std::string(text) + "'");
}

Ensemble::Ensemble(Field field, int d, std::vector<Matrix> matrices, EnsembleKind kind,
                   std::optional<std::vector<int>> ranks, std::optional<std::uint64_t> seed)
    : field_(field),
      d_(d),
      matrices_(std::move(matrices)),
      kind_(kind),
      ranks_(std::move(ranks)),
      seed_(seed) {
  require_dim(d, "Ensemble");
  if (matrices_.empty()) throw ParameterError("Ensemble: need at least one matrix");
  for (std::size_t j = 0; j < matrices_.size(); ++j) {
    if (matrices_[j].rows() != d || matrices_[j].cols() != d) {
      std::ostringstream msg;
      msg << "Ensemble: matrix " << j << " is " << matrices_[j].rows() << "x" << matrices_[j].cols()
          << ", expected " << d << "x" << d;
      throw ParameterError(msg.str());
    }
  }
  if (ranks_ && ranks_->size() != matrices_.size()) {
    throw ParameterError("Ensemble: ranks length does not match number of matrices");
  }
}

double Ensemble::max_norm() const {
  double best = 0.0;
  for (const auto& a : matrices_) best = std::max(best, a.norm());
  return best;
}

Frame::Frame(Field field, Matrix columns) : field_(field), columns_(std::move(columns)) {
  if (columns_.rows() < 1 || columns_.cols() < 1) throw ParameterError("Frame: empty frame");
  for (Eigen::Index j = 0; j < columns_.cols(); ++j) {
    if (columns_.col(j).norm() == 0.0) {
      throw ParameterError("Frame: column " + std::to_string(j) + " is the zero vector");
    }
  }
  if (field_ == Field::Real && linalg::imaginary_defect(columns_) != 0.0) {
    throw ParameterError("Frame: REAL frame has non-real entries");
  }
}

Ensemble hankel_ensemble(int d) {
  require_dim(d, "hankel_ensemble");
  std::vector<Matrix> mats;
  mats.reserve(static_cast<std::size_t>(d));
  for (int t = 1; t <= d; ++t) {
    Matrix a = Matrix::Zero(d, d);
    // 1-based j + k = t + 1 is 0-based j + k = t - 1.
    for (int j = 0; j < d; ++j) {
      const int k = t - 1 - j;
      if (k >= 0 && k < d) a(j, k) = 1.0;
    }
    mats.push_back(std::move(a));
  }
  return Ensemble(Field::Real, d, std::move(mats), EnsembleKind::Hankel);
}

Ensemble minimal_complex_ensemble(int d) {
  require_dim(d, "minimal_complex_ensemble");
  const Scalar i(0.0, 1.0);
  std::vector<Matrix> mats(static_cast<std::size_t>(2 * d - 1), Matrix::Zero(d, d));
  mats[0](0, 0) = 1.0;
  for (int j = 1; j < d; ++j) {
    Matrix& sym = mats[static_cast<std::size_t>(j)];
    sym(0, j) = 1.0;
    sym(j, 0) = 1.0;
    Matrix& skew = mats[static_cast<std::size_t>(d - 1 + j)];
    skew(0, j) = i;
    skew(j, 0) = -i;
  }
  return Ensemble(Field::Complex, d, std::move(mats), EnsembleKind::MinimalComplex);
}

Ensemble random_ensemble(Field field, int d, int n, std::span<const int> ranks, RandomKind kind,
                         std::uint64_t seed, const Exec& exec) {
  require_dim(d, "random_ensemble");
  if (n < 1) throw ParameterError("random_ensemble: N must be >= 1");
  if (static_cast<int>(ranks.size()) != n) {
    throw ParameterError("random_ensemble: expected " + std::to_string(n) + " ranks, got " +
                         std::to_string(ranks.size()));
  }
  for (std::size_t j = 0; j < ranks.size(); ++j) {
    if (ranks[j] < 1 || ranks[j] > d) {
      throw ParameterError("random_ensemble: rank " + std::to_string(ranks[j]) + " at position " +
                           std::to_string(j) + " outside [1, " + std::to_string(d) + "]");
    }
  }
  auto mats = map_indices<Matrix>(static_cast<std::size_t>(n), exec, [&](std::size_t j) {
    Rng rng = Rng::substream(seed, Stream::Ensemble, j);
    return random_factor_matrix(field, d, ranks[j], kind, rng);
  });
  EnsembleKind label = kind == RandomKind::Projection ? EnsembleKind::RandomProjection
                       : field == Field::Real         ? EnsembleKind::RandomSymmetric
                                                      : EnsembleKind::RandomHermitian;
  return Ensemble(field, d, std::move(mats), label, std::vector<int>(ranks.begin(), ranks.end()),
                  seed);
}

Ensemble random_ensemble(Field field, int d, int n, int rank, RandomKind kind, std::uint64_t seed,
                         const Exec& exec) {
  if (n < 1) throw ParameterError("random_ensemble: N must be >= 1");
  const std::vector<int> ranks(static_cast<std::size_t>(n), rank == 0 ? d : rank);
  return random_ensemble(field, d, n, ranks, kind, seed, exec);
}

Ensemble rank_one_from_frame(const Frame& frame) {
  std::vector<Matrix> mats;
  mats.reserve(static_cast<std::size_t>(frame.size()));
  for (int j = 0; j < frame.size(); ++j) {
    const Vector f = frame.columns().col(j);
    Matrix a = f * f.adjoint();
    if (frame.field() == Field::Real) a = a.real().cast<Scalar>();
    mats.push_back(symmetrize(a));
  }
  return Ensemble(frame.field(), frame.dim(), std::move(mats), EnsembleKind::RankOneFrame,
                  std::vector<int>(static_cast<std::size_t>(frame.size()), 1));
}

std::optional<Frame> frame_from_rank_one(const Ensemble& ensemble, double rel_tol) {
  const int d = ensemble.dim();
  Matrix cols(d, ensemble.size());
  for (int j = 0; j < ensemble.size(); ++j) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(ensemble[j]);
    const auto& values = eig.eigenvalues();
    const double top = values.cwiseAbs().maxCoeff();
    if (!(top > 0.0)) return std::nullopt;
    int positive = 0;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      if (values(k) < -rel_tol * top) return std::nullopt;
      if (values(k) > rel_tol * top) ++positive;
    }
    if (positive != 1) return std::nullopt;
    const Eigen::Index last = values.size() - 1;  // eigenvalues ascend
    Vector f = linalg::canonical_phase(eig.eigenvectors().col(last)) * std::sqrt(values(last));
    if (ensemble.field() == Field::Real) f = f.real().cast<Scalar>();
    cols.col(j) = f;
  }
  return Frame(ensemble.field(), cols);
}

ValidationReport validate(const Ensemble& ensemble) {
  ValidationReport report;
  const bool constructed = ensemble.kind() != EnsembleKind::Ingested;
  const double sa_tol = constructed ? 0.0 : kSelfAdjointTolerance;
  const bool projection = ensemble.kind() == EnsembleKind::RandomProjection;
  const auto& ranks = ensemble.ranks();

  auto fail = [&](int j, const std::string& what) {
    report.pass = false;
    report.failures.push_back("matrix " + std::to_string(j) + ": " + what);
  };

  for (int j = 0; j < ensemble.size(); ++j) {
    const Matrix& a = ensemble[j];
    MatrixDiagnostics diag;
    diag.self_adjoint_defect = linalg::self_adjoint_defect(a);
    diag.imaginary_defect = linalg::imaginary_defect(a);
    diag.rank = linalg::numerical_rank(a);
    if (diag.self_adjoint_defect > sa_tol) {
      std::ostringstream msg;
      msg << "self-adjointness defect " << diag.self_adjoint_defect;
      fail(j, msg.str());
    }
    if (ensemble.field() == Field::Real && diag.imaginary_defect != 0.0) {
      fail(j, "non-zero imaginary part in a REAL ensemble");
    }
    if (ranks) {
      const int declared = (*ranks)[static_cast<std::size_t>(j)];
      if (declared < 1 || declared > ensemble.dim()) {
        fail(j, "declared rank " + std::to_string(declared) + " out of range");
      } else if (declared != diag.rank) {
        fail(j, "numerical rank " + std::to_string(diag.rank) + " != declared " +
                    std::to_string(declared));
      }
    }
    if (projection) {
      diag.projection_defect = (a * a - a).norm();
      if (*diag.projection_defect >= kProjectionTolerance) {
        fail(j, "projection defect ||P^2 - P||_F too large");
      }
      if ((a - a.adjoint()).norm() >= kSelfAdjointTolerance) {
        fail(j, "projection not self-adjoint");
      }
    }
    report.matrices.push_back(diag);
  }
  return report;
}

}  // namespace prae

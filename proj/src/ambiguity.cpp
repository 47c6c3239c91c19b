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

#include "prae/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prae/linalg.hpp"
#include "prae/measurement.hpp"
#include "prae/rng.hpp"

namespace prae {

namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kGramSeparation = 1e-3;

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

void check_orbit_params(const OrbitParams& p) {
  for (const Scalar& w : {p.omega1, p.omega2, p.omega3}) {
    if (!(std::abs(std::abs(w) - 1.0) <= kUnitTolerance)) {
      throw ParameterError("rank2_orbit: omega must be unimodular");
    }
  }
  if (!(p.beta >= 0.0 && p.beta < 1.0)) {
    throw ParameterError("rank2_orbit: beta must lie in [0, 1)");
  }
}

bool admissible(const CollisionWitness& w) {
  return w.valid && w.separation > kGramSeparation * std::max(w.x.norm(), w.y.norm());
}

// Direction v with v_1 != 0 in the polarization kernel of [I_d, G] at u,
// with the forced direction iu removed. Zero columns of G are allowed.
std::optional<Vector> gram_direction(const Matrix& g, const Vector& u) {
  const int d = static_cast<int>(g.rows());
  const int n = d + static_cast<int>(g.cols());
  RealMatrix rows(n - 1, 2 * d);
  for (int j = 1; j < n; ++j) {
    Vector f = Vector::Zero(d);
    if (j < d) {
      f(j) = 1.0;
    } else {
      f = g.col(j - d);
    }
    const Scalar a = f.dot(u);  // f^* u
    const Vector w = std::conj(a) * f.conjugate();
    rows.row(j - 1) << w.real().transpose(), -w.imag().transpose();
  }
  const RealMatrix kernel = linalg::null_space(rows);
  if (kernel.cols() == 0) return std::nullopt;
  RealVector forced = linalg::realify(Vector(Scalar(0.0, 1.0) * u));
  forced.normalize();
  const RealMatrix rest = kernel - forced * (forced.transpose() * kernel);
  Eigen::JacobiSVD<RealMatrix> basis_svd(rest, Eigen::ComputeThinU);
  int r = 0;
  for (Eigen::Index k = 0; k < basis_svd.singularValues().size(); ++k) {
    if (basis_svd.singularValues()(k) > 1e-8) ++r;
  }
  if (r == 0) return std::nullopt;
  const RealMatrix q = basis_svd.matrixU().leftCols(r);
  RealMatrix first(2, r);
  first.row(0) = q.row(0);
  first.row(1) = q.row(d);
  Eigen::JacobiSVD<RealMatrix> pick(first, Eigen::ComputeFullV);
  if (pick.singularValues()(0) < 1e-8) return std::nullopt;
  Vector v = linalg::complexify(q * pick.matrixV().col(0));

  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (std::abs(u(k)) > 1e-12) {
      const Scalar s = v(0) * std::conj(u(k));
      if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() < 0.0)) v = -v;
      break;
    }
  }
  v *= u.norm() / v.norm();
  return v;
}

void check_gram(const Matrix& g) {
  const Eigen::Index d = g.rows();
  if (d < 2) throw ParameterError("gram witness: need d >= 2");
  if (g.cols() != d - 1) throw ParameterError("gram witness: G must be d x (d - 1)");
}

Matrix identity_with(const Matrix& g) {
  const Eigen::Index d = g.rows();
  Matrix f(d, d + g.cols());
  f << Matrix::Identity(d, d), g;
  return f;
}

}  // namespace

bool quadruple_independence(const Vector& x, const Vector& y, double rel_tol) {
  if (x.size() < 2) throw ParameterError("quadruple_independence: need d >= 2");
  if (y.size() != x.size()) throw ParameterError("quadruple_independence: length mismatch");
  const Eigen::Index n = x.size() * x.size();
  Matrix stack(4, n);
  stack.row(0) = vec(x * x.adjoint()).transpose();
  stack.row(1) = vec(y * y.adjoint()).transpose();
  stack.row(2) = vec(x * y.adjoint()).transpose();
  stack.row(3) = vec(y * x.adjoint()).transpose();
  return linalg::numerical_rank(stack, rel_tol) == 4;
}

Rank2Signature Rank2Signature::make(Vector x, Vector y, double lambda, double mu) {
  if (x.size() < 2 || x.size() != y.size()) {
    throw ParameterError("Rank2Signature: x and y must have equal length >= 2");
  }
  if (std::abs(x.norm() - 1.0) > kUnitTolerance || std::abs(y.norm() - 1.0) > kUnitTolerance) {
    throw ParameterError("Rank2Signature: x and y must be unit vectors");
  }
  if (std::abs(x.dot(y)) >= kUnitTolerance) {
    throw ParameterError("Rank2Signature: x and y must be orthogonal");
  }
  if (!(lambda >= 0.0 && mu >= 0.0) || !std::isfinite(lambda) || !std::isfinite(mu)) {
    throw ParameterError("Rank2Signature: lambda and mu must be finite and nonnegative");
  }
  if (lambda == 0.0 && mu == 0.0) {
    throw ParameterError("Rank2Signature: lambda and mu cannot both vanish");
  }
  return Rank2Signature{std::move(x), std::move(y), lambda, mu};
}

Rank2Signature Rank2Signature::zero(int d) {
  if (d < 2) throw ParameterError("Rank2Signature: need d >= 2");
  return Rank2Signature{Vector::Unit(d, 0), Vector::Unit(d, 1), 0.0, 0.0};
}

OrbitParams OrbitParams::make(Scalar omega1, Scalar omega2, Scalar omega3, double beta) {
  OrbitParams p{omega1, omega2, omega3, beta};
  check_orbit_params(p);
  return p;
}

Matrix psi(const Rank2Signature& sig) {
  return sig.lambda * sig.lambda * sig.x * sig.x.adjoint() -
         sig.mu * sig.mu * sig.y * sig.y.adjoint();
}

Rank2Signature psi_inverse(const Matrix& b) {
  const Eigen::Index d = b.rows();
  if (b.cols() != d || d < 2) throw ParameterError("psi_inverse: need a square matrix, d >= 2");
  const double norm = b.norm();
  if (norm == 0.0) return Rank2Signature::zero(static_cast<int>(d));
  if (linalg::self_adjoint_defect(b) > 1e-10 * norm) {
    throw PreconditionError("psi_inverse: matrix is not Hermitian");
  }
  const Matrix h = 0.5 * (b + b.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& ev = es.eigenvalues();  // ascending
  const double tol = 1e-10 * ev.cwiseAbs().maxCoeff();
  int nonzero = 0;
  for (Eigen::Index k = 0; k < d; ++k) nonzero += std::abs(ev(k)) > tol;
  if (nonzero > 2) {
    throw PreconditionError("psi_inverse: rank " + std::to_string(nonzero) + " > 2");
  }
  if (ev(d - 2) > tol || ev(1) < -tol) {
    throw PreconditionError("psi_inverse: top two eigenvalues have the same sign");
  }
  const double top = std::max(ev(d - 1), 0.0);
  const double bottom = std::max(-ev(0), 0.0);
  Rank2Signature sig;
  sig.x = linalg::canonical_phase(es.eigenvectors().col(d - 1));
  sig.y = linalg::canonical_phase(es.eigenvectors().col(0));
  sig.lambda = top > tol ? std::sqrt(top) : 0.0;
  sig.mu = bottom > tol ? std::sqrt(bottom) : 0.0;
  return sig;
}

std::pair<Vector, Vector> rank2_orbit(const Rank2Signature& sig, const OrbitParams& p) {
  check_orbit_params(p);
  if (sig.x.size() != sig.y.size()) throw ParameterError("rank2_orbit: length mismatch");
  const double s = 1.0 / std::sqrt(1.0 - p.beta * p.beta);
  const Vector z = s * (p.omega1 * sig.lambda * sig.x + p.omega2 * p.beta * sig.mu * sig.y);
  const Vector w = s * (p.omega3 * p.beta * sig.lambda * sig.x +
                        std::conj(p.omega1) * p.omega2 * p.omega3 * sig.mu * sig.y);
  return {z, w};
}

std::optional<CollisionWitness> gram_collision_witness_from(const Matrix& g, const Vector& u) {
  check_gram(g);
  if (u.size() != g.rows()) throw ParameterError("gram witness: u has the wrong length");
  if (u(0) != Scalar(0.0)) throw ParameterError("gram witness: u_1 must be zero");
  if (u.norm() == 0.0) throw ParameterError("gram witness: u must be nonzero");
  const auto v = gram_direction(g, u);
  if (!v) return std::nullopt;
  const Ensemble e = rank_one_from_frame(Frame(Field::Complex, identity_with(g)));
  CollisionWitness w = make_witness(e, u + *v, u - *v);
  if (!admissible(w)) return std::nullopt;
  return w;
}

GramWitnessResult gram_collision_witness(const Matrix& g, std::uint64_t seed, int budget) {
  check_gram(g);
  GramWitnessResult result;
  const int d = static_cast<int>(g.rows());
  for (int attempt = 0; attempt < budget; ++attempt) {
    Rng rng = Rng::substream(seed, Stream::Witness, static_cast<std::uint64_t>(attempt));
    Vector u = rng.gaussian(Field::Complex, d);
    u(0) = 0.0;
    result.attempts = attempt + 1;
    if ((result.witness = gram_collision_witness_from(g, u))) break;
  }
  return result;
}

GramWitnessResult frame_collision_witness(const Frame& frame, std::uint64_t seed, int budget) {
  if (frame.field() != Field::Complex) {
    throw UnsupportedError("frame witness: COMPLEX frames only (use exact-rank-one for REAL)");
  }
  const int d = frame.dim();
  const int n = frame.size();
  if (d < 2 || n < d || n > 2 * d - 1) {
    throw UnsupportedError("frame witness: need d >= 2 and d <= N <= 2d - 1");
  }
  const Matrix c = frame.columns().leftCols(d);
  if (linalg::numerical_rank(c) < d) {
    throw PreconditionError("frame witness: the first d frame vectors must be independent");
  }
  const Eigen::PartialPivLU<Matrix> lu(c);
  Matrix g = Matrix::Zero(d, d - 1);
  g.leftCols(n - d) = lu.solve(frame.columns().rightCols(n - d));
  // f_j^* x = g_j^* (C^* x), so a witness x' for [I, G] maps to x = C^{-*} x'.
  const Eigen::PartialPivLU<Matrix> lu_adj(c.adjoint());
  const Ensemble e = rank_one_from_frame(frame);

  GramWitnessResult result;
  for (int attempt = 0; attempt < budget; ++attempt) {
    Rng rng = Rng::substream(seed, Stream::Witness, static_cast<std::uint64_t>(attempt));
    Vector u = rng.gaussian(Field::Complex, d);
    u(0) = 0.0;
    result.attempts = attempt + 1;
    const auto v = gram_direction(g, u);
    if (!v) continue;
    CollisionWitness w =
        make_witness(e, lu_adj.solve(Vector(u + *v)), lu_adj.solve(Vector(u - *v)));
    if (admissible(w)) {
      result.witness = std::move(w);
      break;
    }
  }
  return result;
}

CollisionWitness kernel_collision(const Ensemble& ensemble, const Vector& u, const Vector& v) {
  check_signal(ensemble, u);
  check_signal(ensemble, v);
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0) throw ParameterError("kernel_collision: u must be nonzero");
  if (nv == 0.0) throw ParameterError("kernel_collision: v must be nonzero");
  double defect = 0.0;
  for (int j = 0; j < ensemble.size(); ++j) {
    defect = std::max(defect, std::abs(v.dot(ensemble[j] * u).real()));
  }
  if (defect > 1e-10 * ensemble.max_norm() * nu * nv) {
    throw ParameterError("kernel_collision: v is not in the kernel at u");
  }
  return make_witness(ensemble, u + v, u - v);
}

}  // namespace prae

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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "prae/ambiguity.hpp"
#include "prae/linalg.hpp"
#include "prae/measurement.hpp"
#include "prae/rng.hpp"
#include "test_support.hpp"

namespace prae {
namespace {

using prae::testing::oracles;
using prae::testing::real_vector;
using prae::testing::vec;

Scalar unimodular(Rng& rng) { return std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()); }

Rank2Signature random_signature(Rng& rng, int d) {
  Matrix q = rng.gaussian_matrix(Field::Complex, d, 2);
  Eigen::HouseholderQR<Matrix> qr(q);
  const Matrix basis = qr.householderQ() * Matrix::Identity(d, 2);
  return Rank2Signature::make(basis.col(0), basis.col(1), 0.1 + 2.0 * rng.uniform(),
                              0.1 + 2.0 * rng.uniform());
}

double gram_gap(const std::pair<Vector, Vector>& zw, const Matrix& b) {
  const Matrix g = zw.first * zw.first.adjoint() - zw.second * zw.second.adjoint();
  return (g - b).norm();
}

TEST(QuadrupleIndependence, Examples) {
  EXPECT_TRUE(quadruple_independence(real_vector({1, 0}), Vector::Unit(2, 1)));
  EXPECT_FALSE(quadruple_independence(real_vector({1, 0}), real_vector({2, 0})));
  EXPECT_FALSE(quadruple_independence(real_vector({1, 2}), Vector::Zero(2)));
  // Real x, y: xy^* and yx^* are transposes but still independent of xx^*, yy^*.
  EXPECT_TRUE(quadruple_independence(real_vector({1, 2, 0}), real_vector({0, 1, 3})));
  Rng rng(1);
  const Vector x = rng.gaussian(Field::Complex, 4);
  EXPECT_FALSE(quadruple_independence(x, Scalar(0.3, -2.0) * x));
  EXPECT_TRUE(quadruple_independence(x, rng.gaussian(Field::Complex, 4)));
  EXPECT_THROW(quadruple_independence(real_vector({1}), real_vector({1})), ParameterError);
  EXPECT_THROW(quadruple_independence(real_vector({1, 0}), real_vector({1, 0, 0})), ParameterError);
}

TEST(Psi, Examples) {
  const Rank2Signature sig =
      Rank2Signature::make(real_vector({1, 0}), real_vector({0, 1}), 2.0, 3.0);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 4.0;
  expected(1, 1) = -9.0;
  EXPECT_LT((psi(sig) - expected).norm(), 1e-15);
  EXPECT_EQ(psi(Rank2Signature::zero(3)).norm(), 0.0);
}

TEST(Psi, InverseMatchesOracle) {
  const auto& o = oracles()["psi_inverse"];
  Matrix b(3, 3);
  for (int r = 0; r < 3; ++r) b.row(r) = vec(o["B"][static_cast<std::size_t>(r)]).transpose();
  const Rank2Signature sig = psi_inverse(b);
  EXPECT_NEAR(sig.lambda, o["lambda"].get<double>(), 1e-12);
  EXPECT_NEAR(sig.mu, o["mu"].get<double>(), 1e-12);
  EXPECT_LT((sig.x - vec(o["x"])).norm(), 1e-10);
  EXPECT_LT((sig.y - vec(o["y"])).norm(), 1e-10);
}

TEST(Psi, RoundTrip) {
  Rng rng(2);
  for (int t = 0; t < 1000; ++t) {
    const int d = 2 + t % 5;
    const Rank2Signature sig = random_signature(rng, d);
    const Matrix b = psi(sig);
    const Rank2Signature back = psi_inverse(b);
    EXPECT_NEAR(back.lambda, sig.lambda, 1e-10 * (1.0 + sig.lambda));
    EXPECT_NEAR(back.mu, sig.mu, 1e-10 * (1.0 + sig.mu));
    EXPECT_LT((psi(back) - b).norm(), 1e-10 * b.norm());
    EXPECT_LT(phase_distance(back.x, sig.x, Field::Complex), 1e-8);
    EXPECT_LT(phase_distance(back.y, sig.y, Field::Complex), 1e-8);
  }
}

TEST(Psi, OneSidedSignatures) {
  const Rank2Signature sig =
      Rank2Signature::make(real_vector({1, 0, 0}), real_vector({0, 0, 1}), 1.5, 0.0);
  const Rank2Signature back = psi_inverse(psi(sig));
  EXPECT_NEAR(back.lambda, 1.5, 1e-14);
  EXPECT_EQ(back.mu, 0.0);
  EXPECT_LT((psi(back) - psi(sig)).norm(), 1e-14);
  EXPECT_EQ(psi_inverse(Matrix::Zero(3, 3)).lambda, 0.0);
}

TEST(Psi, InverseRejectsBadInput) {
  EXPECT_THROW(psi_inverse(Matrix::Identity(3, 3)), PreconditionError);
  Matrix two_positive = Matrix::Zero(3, 3);
  two_positive(0, 0) = 1.0;
  two_positive(1, 1) = 2.0;
  EXPECT_THROW(psi_inverse(two_positive), PreconditionError);
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  EXPECT_THROW(psi_inverse(skew), PreconditionError);
  EXPECT_THROW(psi_inverse(Matrix::Zero(2, 3)), ParameterError);
}

TEST(Signature, Validation) {
  const Vector e1 = real_vector({1, 0});
  const Vector e2 = real_vector({0, 1});
  EXPECT_THROW(Rank2Signature::make(e1, e1, 1, 1), ParameterError);
  EXPECT_THROW(Rank2Signature::make(2.0 * e1, e2, 1, 1), ParameterError);
  EXPECT_THROW(Rank2Signature::make(e1, e2, -1, 1), ParameterError);
  EXPECT_THROW(Rank2Signature::make(e1, e2, 0, 0), ParameterError);
  EXPECT_THROW(Rank2Signature::make(e1, e2, NAN, 1), ParameterError);
  EXPECT_THROW(Rank2Signature::zero(1), ParameterError);
  EXPECT_THROW(OrbitParams::make(2.0, 1.0, 1.0, 0.0), ParameterError);
  EXPECT_THROW(OrbitParams::make(1.0, 1.0, 1.0, 1.0), ParameterError);
  EXPECT_THROW(OrbitParams::make(1.0, 1.0, 1.0, -0.1), ParameterError);
}

TEST(Orbit, MembersReproduceTheGramDifference) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const Rank2Signature sig = random_signature(rng, 2 + t % 4);
    const Matrix b = psi(sig);
    for (double beta : {0.0, 0.3, 0.9, 0.999}) {
      const OrbitParams p =
          OrbitParams::make(unimodular(rng), unimodular(rng), unimodular(rng), beta);
      const auto zw = rank2_orbit(sig, p);
      EXPECT_LT(gram_gap(zw, b), 1e-9 * b.norm() / (1.0 - beta * beta));
    }
  }
}

TEST(Orbit, CoversEveryPairInDimensionTwo) {
  // Fit (omega, beta) from the coordinates of z, w in the eigenbasis of
  // zz^* - ww^*, then check the orbit reproduces both vectors.
  Rng rng(4);
  for (int t = 0; t < 500; ++t) {
    const Vector z = rng.gaussian(Field::Complex, 2);
    const Vector w = rng.gaussian(Field::Complex, 2);
    const Matrix b = z * z.adjoint() - w * w.adjoint();
    const Rank2Signature sig = psi_inverse(b);
    if (sig.lambda == 0.0 || sig.mu == 0.0) continue;
    const Scalar a = sig.x.dot(z);
    const Scalar c = sig.y.dot(z);
    const double beta = std::abs(c) * sig.lambda / (std::abs(a) * sig.mu);
    ASSERT_LT(beta, 1.0);
    const double s = 1.0 / std::sqrt(1.0 - beta * beta);
    const Scalar omega3 = sig.x.dot(w) / (s * beta * sig.lambda);
    const OrbitParams p =
        OrbitParams::make(a / std::abs(a), c / std::abs(c), omega3 / std::abs(omega3), beta);
    const auto zw = rank2_orbit(sig, p);
    EXPECT_LT((zw.first - z).norm(), 1e-8 * z.norm());
    EXPECT_LT((zw.second - w).norm(), 1e-8 * w.norm());
  }
}

TEST(Orbit, ZeroSignatureGivesZeroPair) {
  const auto zw = rank2_orbit(Rank2Signature::zero(2), OrbitParams{});
  EXPECT_EQ(zw.first.norm(), 0.0);
  EXPECT_EQ(zw.second.norm(), 0.0);
}

TEST(GramWitness, DimensionTwoClosedForm) {
  Matrix g(2, 1);
  g << 1.0, 1.0;
  const auto w = gram_collision_witness_from(g, real_vector({0, 1}));
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->valid);
  const Scalar i(0.0, 1.0);
  EXPECT_LT((w->x - Vector(Eigen::Vector2cd(i, 1.0))).norm(), 1e-12);
  EXPECT_LT((w->y - Vector(Eigen::Vector2cd(-i, 1.0))).norm(), 1e-12);
}

TEST(GramWitness, RandomGramMatrices) {
  for (int d = 2; d <= 6; ++d) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng = Rng::substream(seed, Stream::Test, static_cast<std::uint64_t>(d));
      const Matrix g = rng.gaussian_matrix(Field::Complex, d, d - 1);
      const GramWitnessResult r = gram_collision_witness(g, seed);
      ASSERT_TRUE(r.witness.has_value()) << "d=" << d << " seed=" << seed;
      EXPECT_LE(r.attempts, kGramRetryBudget);
      const CollisionWitness& w = *r.witness;
      EXPECT_TRUE(w.valid);
      EXPECT_LT(w.residual, 1e-10 * w.scale);
      EXPECT_GT(w.separation, 1e-3 * std::max(w.x.norm(), w.y.norm()));
      Matrix cols(d, 2 * d - 1);
      cols << Matrix::Identity(d, d), g;
      const MeasurementVector gap = measure(rank_one_from_frame(Frame(Field::Complex, cols)), w.x) -
                                    measure(rank_one_from_frame(Frame(Field::Complex, cols)), w.y);
      EXPECT_LT(gap.cwiseAbs().maxCoeff(), 1e-10 * w.scale);
    }
  }
}

TEST(GramWitness, Validation) {
  Matrix g(2, 1);
  g << 1.0, 1.0;
  EXPECT_THROW(gram_collision_witness_from(g, real_vector({1, 1})), ParameterError);
  EXPECT_THROW(gram_collision_witness_from(g, real_vector({0, 0})), ParameterError);
  EXPECT_THROW(gram_collision_witness(Matrix::Zero(3, 1), 0), ParameterError);
  EXPECT_THROW(gram_collision_witness(Matrix::Zero(1, 0), 0), ParameterError);
}

TEST(FrameWitness, GeneralFramesReduceToGramForm) {
  for (int d = 2; d <= 5; ++d) {
    for (int n = d; n <= 2 * d - 1; ++n) {
      Rng rng = Rng::substream(9, Stream::Test, static_cast<std::uint64_t>(10 * d + n));
      const Frame frame(Field::Complex, rng.gaussian_matrix(Field::Complex, d, n));
      const GramWitnessResult r = frame_collision_witness(frame, 5);
      ASSERT_TRUE(r.witness.has_value()) << "d=" << d << " n=" << n;
      EXPECT_TRUE(r.witness->valid);
    }
  }
}

TEST(FrameWitness, Validation) {
  Rng rng(10);
  EXPECT_THROW(
      frame_collision_witness(Frame(Field::Real, rng.gaussian_matrix(Field::Real, 3, 4)), 0),
      UnsupportedError);
  EXPECT_THROW(
      frame_collision_witness(Frame(Field::Complex, rng.gaussian_matrix(Field::Complex, 3, 6)), 0),
      UnsupportedError);
  Matrix cols = rng.gaussian_matrix(Field::Complex, 3, 4);
  cols.col(1) = cols.col(0);
  EXPECT_THROW(frame_collision_witness(Frame(Field::Complex, cols), 0), PreconditionError);
}

TEST(KernelCollision, HankelCascade) {
  const Ensemble h = hankel_ensemble(3);
  const CollisionWitness w = kernel_collision(h, real_vector({0, 1, 0}), real_vector({0, 0, 1}));
  EXPECT_TRUE(w.valid);
  EXPECT_EQ(w.residual, 0.0);
  EXPECT_THROW(kernel_collision(h, real_vector({0, 1, 0}), Vector::Zero(3)), ParameterError);
  EXPECT_THROW(kernel_collision(h, real_vector({0, 1, 0}), real_vector({1, 0, 0})), ParameterError);
}

TEST(KernelCollision, ForcedDirectionIsNotACollision) {
  Rng rng(11);
  const Ensemble e = minimal_complex_ensemble(3);
  const Vector u = rng.gaussian(Field::Complex, 3);
  const CollisionWitness w = kernel_collision(e, u, Scalar(0.0, 0.5) * u);
  EXPECT_FALSE(w.valid);
  EXPECT_LT(w.separation, 1e-12 * u.norm());
}

}  // namespace
}  // namespace prae

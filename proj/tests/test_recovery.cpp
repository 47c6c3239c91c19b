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

#include "prae/measurement.hpp"
#include "prae/recovery.hpp"
#include "prae/rng.hpp"
#include "test_support.hpp"

namespace prae {
namespace {

using prae::testing::real_vector;

TEST(Objective, GradientMatchesFiniteDifferences) {
  for (Field field : {Field::Real, Field::Complex}) {
    const Ensemble e = random_ensemble(field, 4, 7, 0, RandomKind::General, 1);
    Rng rng(2);
    const Vector y = rng.gaussian(field, 4);
    const MeasurementVector b = measure(e, rng.gaussian(field, 4));
    const Objective obj = residual_objective(e, y, b);
    const QuadraticSystem system(e);
    const RealVector p = system.to_params(y);
    ASSERT_EQ(obj.gradient.size(), system.params());
    const double h = 1e-6;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      RealVector up = p, down = p;
      up(k) += h;
      down(k) -= h;
      const double fd = (residual_objective(e, system.to_signal(up), b).value -
                         residual_objective(e, system.to_signal(down), b).value) /
                        (2.0 * h);
      EXPECT_NEAR(obj.gradient(k), fd, 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST(Objective, VanishesOnTheOrbitOfTheTruth) {
  const Ensemble e = random_ensemble(Field::Complex, 3, 6, 0, RandomKind::General, 3);
  Rng rng(4);
  const Vector x = rng.gaussian(Field::Complex, 3);
  const MeasurementVector b = measure(e, x);
  EXPECT_LT(residual_objective(e, x, b).value, 1e-24);
  EXPECT_LT(residual_objective(e, std::polar(1.0, 0.7) * x, b).value, 1e-24);
  EXPECT_LT(residual_objective(e, x, b).gradient.norm(), 1e-12);
  EXPECT_THROW(residual_objective(e, x, MeasurementVector::Zero(2)), ParameterError);
}

TEST(QuadraticSystem, AgreesWithMeasure) {
  for (Field field : {Field::Real, Field::Complex}) {
    const Ensemble e = random_ensemble(field, 3, 5, 0, RandomKind::General, 5);
    const QuadraticSystem system(e);
    Rng rng(6);
    const Vector y = rng.gaussian(field, 3);
    EXPECT_LT((system.evaluate(system.to_params(y)) - measure(e, y)).norm(), 1e-12);
    EXPECT_LT((system.to_signal(system.to_params(y)) - y).norm(), 0.0 + 1e-15);
  }
}

TEST(Recover, HankelSignal) {
  const Ensemble h = hankel_ensemble(4);
  const Vector x = real_vector({1.0, -0.5, 2.0, 0.25});
  RecoveryOptions options;
  options.restarts = 50;
  options.seed = 1;
  const RecoveryResult r = recover(h, measure(h, x), options, x);
  EXPECT_TRUE(r.converged);
  ASSERT_TRUE(r.phase_error.has_value());
  EXPECT_LT(*r.phase_error, kRecoverySuccessTolerance);
  EXPECT_LE(r.restarts_used, 50);
}

TEST(Recover, ZeroMeasurementsGiveZero) {
  const Ensemble e = random_ensemble(Field::Complex, 3, 6, 0, RandomKind::General, 7);
  const RecoveryResult r = recover(e, MeasurementVector::Zero(6), RecoveryOptions{});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.candidate.norm(), 0.0);
  EXPECT_EQ(r.restarts_used, 0);
}

TEST(Recover, NonInjectiveFrameConvergesToSomePreimage) {
  RealMatrix f(2, 2);
  f << 1, 0, 0, 1;
  const Ensemble e = rank_one_from_frame(Frame(Field::Real, f.cast<Scalar>()));
  const Vector x = real_vector({1.0, 2.0});
  RecoveryOptions options;
  options.restarts = 10;
  const RecoveryResult r = recover(e, measure(e, x), options, x);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(std::abs(r.candidate(0).real()), 1.0, 1e-8);
  EXPECT_NEAR(std::abs(r.candidate(1).real()), 2.0, 1e-8);
}

TEST(Recover, Validation) {
  const Ensemble e = hankel_ensemble(3);
  RecoveryOptions options;
  EXPECT_THROW(recover(e, MeasurementVector::Zero(2), options), ParameterError);
  MeasurementVector bad = MeasurementVector::Zero(3);
  bad(1) = NAN;
  EXPECT_THROW(recover(e, bad, options), ParameterError);
  options.restarts = 0;
  EXPECT_THROW(recover(e, MeasurementVector::Ones(3), options), ParameterError);
}

TEST(Recover, GenericEnsemblesAboveThreshold) {
  for (int d = 2; d <= 5; ++d) {
    for (Field field : {Field::Real, Field::Complex}) {
      const int n = field == Field::Real ? d + 1 : 2 * d;
      int ok = 0;
      for (std::uint64_t t = 0; t < 20; ++t) {
        const Ensemble e = random_ensemble(field, d, n, 0, RandomKind::General, 100 + t);
        Rng rng = Rng::substream(t, Stream::Test, static_cast<std::uint64_t>(d));
        const Vector x = rng.gaussian(field, d);
        RecoveryOptions options;
        options.restarts = 50;
        options.seed = t;
        const RecoveryResult r = recover(e, measure(e, x), options, x);
        ok += *r.phase_error < kRecoverySuccessTolerance;
      }
      EXPECT_GE(ok, 19) << to_string(field) << " d=" << d;
    }
  }
}

TEST(Sweep, EmptyAndValidation) {
  SweepConfig config;
  config.trials = 0;
  EXPECT_TRUE(sweep(config).empty());
  EXPECT_EQ(sweep_csv({}), "field,d,N,kind,trials,success_rate,seed\n");
  config.trials = 1;
  config.n_min = 3;
  config.n_max = 2;
  EXPECT_THROW(sweep(config), ParameterError);
}

TEST(Sweep, RowsAndDeterminism) {
  SweepConfig config;
  config.field = Field::Real;
  config.d = 3;
  config.n_min = 2;
  config.n_max = 5;
  config.trials = 6;
  config.restarts = 10;
  config.seed = 11;
  const auto rows = sweep(config);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].n, 2);
  EXPECT_EQ(rows[0].kind, "random-symmetric");
  EXPECT_EQ(rows[0].success_rate, 0.0);
  EXPECT_EQ(rows[3].success_rate, 1.0);
  const std::string csv = sweep_csv(rows);
  EXPECT_EQ(csv, sweep_csv(sweep(config)));
  EXPECT_EQ(csv, sweep_csv(sweep(config, Exec{4})));
  EXPECT_NE(csv.find("\nR,3,5,random-symmetric,6,1.000000,11\n"), std::string::npos);
}

TEST(Sweep, ProjectionKind) {
  SweepConfig config;
  config.field = Field::Complex;
  config.d = 3;
  config.n_min = 8;
  config.n_max = 8;
  config.kind = RandomKind::Projection;
  config.rank = 1;
  config.trials = 4;
  const auto rows = sweep(config, Exec{2});
  EXPECT_EQ(rows[0].kind, "random-projection");
  EXPECT_EQ(rows[0].success_rate, 1.0);
}

}  // namespace
}  // namespace prae

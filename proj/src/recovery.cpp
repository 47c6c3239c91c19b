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

#include "prae/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "prae/linalg.hpp"
#include "prae/rng.hpp"

namespace prae {

QuadraticSystem::QuadraticSystem(const Ensemble& ensemble)
    : field_(ensemble.field()), d_(ensemble.dim()) {
  ops_.reserve(static_cast<std::size_t>(ensemble.size()));
  for (const Matrix& a : ensemble.matrices()) {
    ops_.push_back(field_ == Field::Real ? RealMatrix(a.real()) : linalg::realify(a));
  }
}

RealVector QuadraticSystem::to_params(const Vector& y) const {
  return field_ == Field::Real ? RealVector(y.real()) : linalg::realify(y);
}

Vector QuadraticSystem::to_signal(const RealVector& p) const {
  return field_ == Field::Real ? Vector(p.cast<Scalar>()) : linalg::complexify(p);
}

RealVector QuadraticSystem::evaluate(const RealVector& p) const {
  RealVector m(size());
  for (int j = 0; j < size(); ++j) m(j) = p.dot(ops_[static_cast<std::size_t>(j)] * p);
  return m;
}

RealMatrix QuadraticSystem::jacobian(const RealVector& p) const {
  RealMatrix jac(size(), params());
  for (int j = 0; j < size(); ++j) {
    jac.row(j) = 2.0 * (ops_[static_cast<std::size_t>(j)] * p).transpose();
  }
  return jac;
}

Objective residual_objective(const Ensemble& ensemble, const Vector& y,
                             const MeasurementVector& b) {
  check_signal(ensemble, y);
  if (b.size() != ensemble.size()) throw ParameterError("residual_objective: b has wrong length");
  const QuadraticSystem system(ensemble);
  const RealVector p = system.to_params(y);
  const RealVector r = system.evaluate(p) - b;
  Objective obj;
  obj.value = r.squaredNorm();
  // d/dp sum r_j^2 = 2 sum r_j (2 M_j p) = 4 sum r_j M_j p.
  obj.gradient = 2.0 * system.jacobian(p).transpose() * r;
  return obj;
}

LocalSolve damped_gauss_newton(const QuadraticSystem& system, const MeasurementVector& b,
                               const Vector& y0, const LocalSolveOptions& options) {
  const double b_scale = std::max(1.0, b.norm());
  RealVector p = system.to_params(y0);
  RealVector r = system.evaluate(p) - b;
  double cost = r.squaredNorm();
  RealMatrix jac = system.jacobian(p);
  RealMatrix normal = jac.transpose() * jac;
  double lambda = 1e-3 * std::max(normal.diagonal().maxCoeff(), 1e-12);
  int stalled = 0;
  int it = 0;
  for (; it < options.max_iters; ++it) {
    if (std::sqrt(cost) / b_scale < options.stop_residual) break;
    const RealVector grad = jac.transpose() * r;
    const double floor = 1e-12 * std::max(normal.diagonal().maxCoeff(), 1e-300);
    lambda = std::max(lambda, floor);
    RealMatrix damped = normal;
    damped.diagonal().array() += lambda;
    const RealVector step = damped.ldlt().solve(-grad);
    if (!step.allFinite()) break;
    if (step.norm() < options.step_floor * (p.norm() + options.step_floor)) break;
    const RealVector trial = p + step;
    const RealVector r_trial = system.evaluate(trial) - b;
    const double cost_trial = r_trial.squaredNorm();
    if (cost_trial < cost) {
      const double gain = (cost - cost_trial) / cost;
      stalled = gain < 1e-9 ? stalled + 1 : 0;
      p = trial;
      r = r_trial;
      cost = cost_trial;
      jac = system.jacobian(p);
      normal = jac.transpose() * jac;
      lambda /= 3.0;
      if (stalled >= 8) break;  // creeping toward a non-zero local minimum
    } else {
      lambda *= 4.0;
      if (lambda > 1e20 * std::max(normal.diagonal().maxCoeff(), 1.0)) break;
    }
  }
  LocalSolve out;
  out.y = system.to_signal(p);
  out.residual = std::sqrt(cost) / b_scale;
  out.iterations = it;
  return out;
}

double initial_scale(const Ensemble& ensemble, const MeasurementVector& b) {
  double trace = 0.0;
  for (const Matrix& a : ensemble.matrices()) trace += a.trace().real();
  if (trace > 0.0) {
    const double ratio = b.sum() / trace;
    if (ratio > 0.0 && std::isfinite(ratio)) return std::sqrt(ratio);
  }
  return 1.0;
}

RecoveryResult recover(const Ensemble& ensemble, const MeasurementVector& b,
                       const RecoveryOptions& options, const std::optional<Vector>& truth) {
  if (b.size() != ensemble.size()) throw ParameterError("recover: b has wrong length");
  if (!b.allFinite()) throw ParameterError("recover: measurements must be finite");
  if (options.restarts < 1) throw ParameterError("recover: restarts must be >= 1");
  if (truth) check_signal(ensemble, *truth);

  RecoveryResult result;
  if (b.norm() == 0.0) {
    result.candidate = Vector::Zero(ensemble.dim());
    result.converged = true;
  } else {
    const QuadraticSystem system(ensemble);
    const double scale = initial_scale(ensemble, b);
    LocalSolveOptions local;
    local.max_iters = options.max_iters;
    local.step_floor = options.step_floor;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < options.restarts; ++k) {
      Rng rng = Rng::substream(options.seed, Stream::Recovery, static_cast<std::uint64_t>(k));
      Vector y0 = rng.gaussian(ensemble.field(), ensemble.dim());
      y0 *= scale / y0.norm();
      const LocalSolve solve = damped_gauss_newton(system, b, y0, local);
      result.restarts_used = k + 1;
      if (solve.residual < best) {
        best = solve.residual;
        result.candidate = solve.y;
      }
      if (solve.residual < options.converge_tol) break;
    }
  }
  result.residual = (measure(ensemble, result.candidate) - b).norm() / std::max(1.0, b.norm());
  result.converged = result.residual < options.converge_tol;
  if (truth) result.phase_error = phase_distance(result.candidate, *truth, ensemble.field());
  return result;
}

std::vector<SweepRow> sweep(const SweepConfig& config, const Exec& exec) {
  if (config.d < 1) throw ParameterError("sweep: d must be >= 1");
  if (config.n_min < 1 || config.n_max < config.n_min) {
    throw ParameterError("sweep: need 1 <= n_min <= n_max");
  }
  if (config.trials < 0) throw ParameterError("sweep: trials must be >= 0");
  std::vector<SweepRow> rows;
  if (config.trials == 0) return rows;

  const int levels = config.n_max - config.n_min + 1;
  const auto total = static_cast<std::size_t>(levels) * static_cast<std::size_t>(config.trials);
  const auto outcomes = map_indices<char>(total, exec, [&](std::size_t idx) -> char {
    const int n = config.n_min + static_cast<int>(idx / static_cast<std::size_t>(config.trials));
    const auto t = idx % static_cast<std::size_t>(config.trials);
    Rng rng = Rng::substream(config.seed, Stream::Sweep, static_cast<std::uint64_t>(n), t);
    const std::uint64_t ensemble_seed = rng.engine()();
    const std::uint64_t recovery_seed = rng.engine()();
    const Ensemble ensemble =
        random_ensemble(config.field, config.d, n, config.rank, config.kind, ensemble_seed);
    const Vector x = rng.gaussian(config.field, config.d);
    RecoveryOptions options;
    options.restarts = config.restarts;
    options.max_iters = config.max_iters;
    options.seed = recovery_seed;
    const RecoveryResult res = recover(ensemble, measure(ensemble, x), options, x);
    return static_cast<char>(*res.phase_error < kRecoverySuccessTolerance);
  });

  for (int level = 0; level < levels; ++level) {
    SweepRow row;
    row.field = config.field;
    row.d = config.d;
    row.n = config.n_min + level;
    row.kind =
        std::string(to_string(config.kind == RandomKind::Projection ? EnsembleKind::RandomProjection
                              : config.field == Field::Real ? EnsembleKind::RandomSymmetric
                                                            : EnsembleKind::RandomHermitian));
    row.trials = config.trials;
    int successes = 0;
    for (int t = 0; t < config.trials; ++t) {
      successes += outcomes[static_cast<std::size_t>(level * config.trials + t)];
    }
    row.success_rate = static_cast<double>(successes) / config.trials;
    row.seed = config.seed;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "field,d,N,kind,trials,success_rate,seed\n";
  for (const SweepRow& row : rows) {
    char rate[32];
    std::snprintf(rate, sizeof rate, "%.6f", row.success_rate);
    out << to_string(row.field) << ',' << row.d << ',' << row.n << ',' << row.kind << ','
        << row.trials << ',' << rate << ',' << row.seed << '\n';
  }
  return out.str();
}

}  // namespace prae

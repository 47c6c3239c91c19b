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
#include <string>
#include <vector>

#include "prae/core.hpp"
#include "prae/ensembles.hpp"
#include "prae/measurement.hpp"
#include "prae/parallel.hpp"

namespace prae {

/// The measurement map written over real parameters: p = x (REAL) or
/// p = (Re x; Im x) (COMPLEX), with m_j(p) = p^T M_j p where M_j = A_j or
/// the realified block F_j.
class QuadraticSystem {
 public:
  explicit QuadraticSystem(const Ensemble& ensemble);

  Field field() const { return field_; }
  int dim() const { return d_; }
  int params() const { return field_ == Field::Real ? d_ : 2 * d_; }
  int size() const { return static_cast<int>(ops_.size()); }

  RealVector to_params(const Vector& y) const;
  Vector to_signal(const RealVector& p) const;

  RealVector evaluate(const RealVector& p) const;
  /// N x params; row j is the gradient 2 (M_j p)^T.
  RealMatrix jacobian(const RealVector& p) const;

 private:
  Field field_;
  int d_;
  std::vector<RealMatrix> ops_;
};

struct Objective {
  double value = 0.0;
  RealVector gradient;  // length d (REAL) or 2d (COMPLEX, w.r.t. (Re y; Im y))
};

/// sum_j (y^* A_j y - b_j)^2 and its gradient.
Objective residual_objective(const Ensemble& ensemble, const Vector& y, const MeasurementVector& b);

struct LocalSolveOptions {
  int max_iters = 200;
  double step_floor = 1e-14;
  double stop_residual = 1e-14;  // relative residual at which iteration ends
};

struct LocalSolve {
  Vector y;
  double residual = 0.0;  // ||m(y) - b|| / max(1, ||b||)
  int iterations = 0;
};

/// Levenberg-damped Gauss-Newton on ||m(y) - b||^2 from y0. A step is
/// accepted only if it decreases the cost; otherwise the damping grows.
LocalSolve damped_gauss_newton(const QuadraticSystem& system, const MeasurementVector& b,
                               const Vector& y0, const LocalSolveOptions& options = {});

/// sqrt((sum_j b_j) / (sum_j tr A_j)) when that ratio is positive, else 1.
double initial_scale(const Ensemble& ensemble, const MeasurementVector& b);

struct RecoveryOptions {
  int restarts = 20;
  int max_iters = 200;
  std::uint64_t seed = 0;
  double converge_tol = 1e-8;
  double step_floor = 1e-14;
};

struct RecoveryResult {
  Vector candidate;
  double residual = 0.0;
  int restarts_used = 0;
  bool converged = false;
  std::optional<double> phase_error;
};

/// Multi-start recovery. Restart k starts from substream (seed, Recovery, k)
/// and restarts stop at the first converged one, so the result does not
/// depend on scheduling. Without convergence the lowest residual wins
/// (ties to the lower restart index).
RecoveryResult recover(const Ensemble& ensemble, const MeasurementVector& b,
                       const RecoveryOptions& options,
                       const std::optional<Vector>& truth = std::nullopt);

inline constexpr double kRecoverySuccessTolerance = 1e-6;

struct SweepConfig {
  Field field = Field::Real;
  int d = 4;
  int n_min = 1;
  int n_max = 1;
  RandomKind kind = RandomKind::General;
  int rank = 0;  // 0 means full rank
  int trials = 10;
  int restarts = 20;
  int max_iters = 200;
  std::uint64_t seed = 0;
};

struct SweepRow {
  Field field = Field::Real;
  int d = 0;
  int n = 0;
  std::string kind;
  int trials = 0;
  double success_rate = 0.0;
  std::uint64_t seed = 0;
};

/// Recovery success rate (phase error < 1e-6) for fresh random ensembles and
/// signals at each N in [n_min, n_max]. Trials run through `exec`.
std::vector<SweepRow> sweep(const SweepConfig& config, const Exec& exec = {});

/// CSV with header "field,d,N,kind,trials,success_rate,seed".
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace prae

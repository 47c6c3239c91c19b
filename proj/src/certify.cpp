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

#include "prae/certify.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "prae/measurement.hpp"
#include "prae/recovery.hpp"

namespace prae {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::PrAe:
      return "PR_AE";
    case Verdict::NotPrAe:
      return "NOT_PR_AE";
    case Verdict::LikelyPrAe:
      return "LIKELY_PR_AE";
    case Verdict::LikelyNotPrAe:
      return "LIKELY_NOT_PR_AE";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

RealMatrix select_columns(const RealMatrix& frame, const std::vector<int>& idx) {
  RealMatrix out(frame.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k)
    out.col(static_cast<Eigen::Index>(k)) = frame.col(idx[k]);
  return out;
}

RealMatrix complement_basis(const RealMatrix& frame, const std::vector<int>& idx, double rel_tol) {
  if (idx.empty()) return RealMatrix::Identity(frame.rows(), frame.rows());
  return linalg::orthogonal_complement(select_columns(frame, idx), rel_tol);
}

void split_mask(std::uint64_t mask, int n, std::vector<int>& I, std::vector<int>& J) {
  I.clear();
  J.clear();
  for (int k = 0; k < n; ++k) ((mask >> k) & 1U ? I : J).push_back(k);
}

std::uint64_t partition_count(int n) { return std::uint64_t{1} << (n - 1); }

void require_real_vector(const Vector& u, const char* what) {
  if (u.size() > 0 && u.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw ParameterError(std::string(what) + ": vector must be real");
  }
}

}  // namespace

SubsetPairWitness pair_dimensions(const RealMatrix& frame, const std::vector<int>& I,
                                  const std::vector<int>& J, double rel_tol) {
  SubsetPairWitness w;
  w.I = I;
  w.J = J;
  const RealMatrix bi = complement_basis(frame, I, rel_tol);
  const RealMatrix bj = complement_basis(frame, J, rel_tol);
  w.dim_I_perp = static_cast<int>(bi.cols());
  w.dim_J_perp = static_cast<int>(bj.cols());
  RealMatrix both(frame.rows(), bi.cols() + bj.cols());
  both << bi, bj;
  w.dim_sum = linalg::numerical_rank(both, rel_tol);
  return w;
}

SubsetPairWitness partition_dimensions(const RealMatrix& frame, std::uint64_t mask,
                                       double rel_tol) {
  std::vector<int> I, J;
  split_mask(mask, static_cast<int>(frame.cols()), I, J);
  return pair_dimensions(frame, I, J, rel_tol);
}

bool is_collision_pair(const SubsetPairWitness& w, int d) {
  return w.dim_sum == d && w.dim_I_perp > 0 && w.dim_J_perp > 0;
}

std::optional<std::uint64_t> find_collision_partition_serial(const RealMatrix& frame) {
  const int d = static_cast<int>(frame.rows());
  const std::uint64_t count = partition_count(static_cast<int>(frame.cols()));
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    if (is_collision_pair(partition_dimensions(frame, mask), d)) return mask;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> find_collision_partition_omp(const RealMatrix& frame, int threads) {
  const int d = static_cast<int>(frame.rows());
  const auto count = static_cast<long long>(partition_count(static_cast<int>(frame.cols())));
  long long best = std::numeric_limits<long long>::max();
#pragma omp parallel for num_threads(threads) schedule(dynamic, 64) reduction(min : best)
  for (long long mask = 0; mask < count; ++mask) {
    if (mask < best &&
        is_collision_pair(partition_dimensions(frame, static_cast<std::uint64_t>(mask)), d)) {
      best = mask;
    }
  }
  if (best == std::numeric_limits<long long>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(best);
}

CollisionWitness partition_collision(const Frame& frame, const SubsetPairWitness& pair, Rng& rng) {
  const RealMatrix f = frame.real_columns();
  const RealMatrix bi = complement_basis(f, pair.I, linalg::kRankTolerance);
  const RealMatrix bj = complement_basis(f, pair.J, linalg::kRankTolerance);
  const RealVector p = bi * rng.gaussian_real(static_cast<int>(bi.cols()));
  const RealVector q = bj * rng.gaussian_real(static_cast<int>(bj.cols()));
  return make_witness(rank_one_from_frame(frame), (p + q).cast<Scalar>(), (p - q).cast<Scalar>());
}

CertReport real_rank_one_exact(const Frame& frame, const Exec& exec) {
  if (frame.field() != Field::Real) {
    throw UnsupportedError("exact-rank-one: the partition criterion only applies to REAL frames");
  }
  if (frame.size() > kExactEnumerationBudget) {
    throw UnsupportedError("exact-rank-one: N = " + std::to_string(frame.size()) +
                           " exceeds the enumeration budget of " +
                           std::to_string(kExactEnumerationBudget) +
                           "; use --method montecarlo instead");
  }
  const RealMatrix f = frame.real_columns();
  const auto mask = exec.threads > 1 ? find_collision_partition_omp(f, exec.threads)
                                     : find_collision_partition_serial(f);
  CertReport report;
  report.method = "exact-rank-one";
  report.stats.trials = static_cast<int>(partition_count(frame.size()));
  report.tolerances["rank"] = linalg::kRankTolerance;
  if (!mask) {
    report.verdict = Verdict::PrAe;
    return report;
  }
  report.verdict = Verdict::NotPrAe;
  report.stats.failures = 1;
  report.subset_witnesses.push_back(partition_dimensions(f, *mask));
  Rng rng = Rng::substream(0, Stream::Witness, *mask);
  report.collisions.push_back(partition_collision(frame, report.subset_witnesses.back(), rng));
  return report;
}

bool full_spark(const Frame& frame, double rel_tol) {
  const int d = frame.dim();
  const int n = frame.size();
  if (n < d) throw ParameterError("full_spark: need N >= d");
  std::vector<char> pick(static_cast<std::size_t>(n), 0);
  std::fill(pick.begin(), pick.begin() + d, 1);
  Matrix sub(d, d);
  do {
    int c = 0;
    for (int k = 0; k < n; ++k) {
      if (pick[static_cast<std::size_t>(k)]) sub.col(c++) = frame.columns().col(k);
    }
    if (linalg::numerical_rank(sub, rel_tol) < d) return false;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return true;
}

RealMatrix bilinear_kernel(const Ensemble& ensemble, const Vector& u, double rel_tol) {
  if (ensemble.field() != Field::Real) {
    throw UnsupportedError("bilinear_kernel: REAL ensembles only (use polarization_kernel)");
  }
  check_signal(ensemble, u);
  require_real_vector(u, "bilinear_kernel");
  if (u.norm() == 0.0) throw ParameterError("bilinear_kernel: u must be nonzero");
  const RealVector ur = u.real();
  RealMatrix rows(ensemble.size(), ensemble.dim());
  for (int j = 0; j < ensemble.size(); ++j) rows.row(j) = (ensemble[j].real() * ur).transpose();
  return linalg::null_space(rows, rel_tol);
}

RealMatrix polarization_kernel(const Ensemble& ensemble, const Vector& u, double rel_tol) {
  if (u.size() != ensemble.dim()) throw ParameterError("polarization_kernel: length mismatch");
  if (u.norm() == 0.0) throw ParameterError("polarization_kernel: u must be nonzero");
  // Re(v^* w) = Re(v)·Re(w) + Im(v)·Im(w) with w = A_j u.
  RealMatrix rows(ensemble.size(), 2 * ensemble.dim());
  for (int j = 0; j < ensemble.size(); ++j) {
    rows.row(j) = linalg::realify(Vector(ensemble[j] * u)).transpose();
  }
  return linalg::null_space(rows, rel_tol);
}

Matrix collision_directions(const Ensemble& ensemble, const Vector& u, double rel_tol) {
  if (ensemble.field() == Field::Real) {
    return bilinear_kernel(ensemble, u, rel_tol).cast<Scalar>();
  }
  const RealMatrix kernel = polarization_kernel(ensemble, u, rel_tol);
  RealVector forced = linalg::realify(Vector(Scalar(0.0, 1.0) * u));
  forced.normalize();
  const RealMatrix rest = kernel - forced * (forced.transpose() * kernel);
  Matrix out(ensemble.dim(), 0);
  if (rest.cols() == 0) return out;
  Eigen::JacobiSVD<RealMatrix> svd(rest, Eigen::ComputeThinU);
  int rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > 1e-8) ++rank;
  }
  out.resize(ensemble.dim(), rank);
  for (int k = 0; k < rank; ++k) out.col(k) = linalg::complexify(svd.matrixU().col(k));
  return out;
}

CertReport jacobian_rank_survey(const Ensemble& ensemble, int samples, std::uint64_t seed,
                                const Exec& exec, double rel_tol) {
  if (samples < 1) throw ParameterError("jacobian_rank_survey: samples must be >= 1");
  const auto ranks = map_indices<int>(static_cast<std::size_t>(samples), exec, [&](std::size_t k) {
    Rng rng = Rng::substream(seed, Stream::Survey, k);
    return jacobian(ensemble, rng.gaussian(ensemble.field(), ensemble.dim()), rel_tol).rank;
  });
  const int target = regular_rank(ensemble.field(), ensemble.dim());
  CertReport report;
  report.method = "survey";
  report.stats.trials = samples;
  report.stats.seed = seed;
  report.tolerances["rank"] = rel_tol;
  int regular = 0;
  int first_regular = -1;
  for (int k = 0; k < samples; ++k) {
    if (ranks[static_cast<std::size_t>(k)] == target) {
      ++regular;
      if (first_regular < 0) first_regular = k;
    }
  }
  const auto [lo, hi] = std::minmax_element(ranks.begin(), ranks.end());
  report.stats.failures = samples - regular;
  report.stats.values["regular_samples"] = regular;
  report.stats.values["degenerate_samples"] = samples - regular;
  report.stats.values["min_rank"] = *lo;
  report.stats.values["max_rank"] = *hi;
  report.stats.values["target_rank"] = target;
  if (regular > 0) {
    report.stats.values["null_set_certificate"] = 1;
    report.stats.values["first_regular_sample"] = first_regular;
    report.verdict = Verdict::Inconclusive;
  } else {
    report.stats.values["null_set_certificate"] = 0;
    report.verdict = *lo == *hi ? Verdict::LikelyNotPrAe : Verdict::Inconclusive;
  }
  return report;
}

namespace {

// Right singular vector for the smallest singular value (a null vector when
// rows < cols).
Vector smallest_right_vector(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(m.cols() - 1);
}

double incidence_residual(const Ensemble& e, const Vector& x, const Vector& y) {
  double worst = 0.0;
  for (int j = 0; j < e.size(); ++j)
    worst = std::max(worst, std::abs((x.transpose() * (e[j] * y)).value()));
  return worst;
}

}  // namespace

std::optional<TangentPoint> find_incidence_point(const Ensemble& ensemble, std::uint64_t seed,
                                                 int attempt, double tangent_tol) {
  const int d = ensemble.dim();
  const int n = ensemble.size();
  Rng rng = Rng::substream(seed, Stream::Tangent, static_cast<std::uint64_t>(attempt));
  Vector x = rng.gaussian(Field::Complex, d).normalized();

  auto row_system_for_y = [&](const Vector& xv) {
    Matrix m(n, d);
    for (int j = 0; j < n; ++j) m.row(j) = xv.transpose() * ensemble[j];
    return m;
  };
  auto row_system_for_x = [&](const Vector& yv) {
    Matrix m(n, d);
    for (int j = 0; j < n; ++j) m.row(j) = (ensemble[j] * yv).transpose();
    return m;
  };

  Vector y;
  const Matrix fiber = linalg::null_space(row_system_for_y(x));
  if (fiber.cols() > 0) {
    y = (fiber * rng.gaussian(Field::Complex, static_cast<int>(fiber.cols()))).normalized();
  } else {
    // Trivial fiber: alternate exact minimizations of sum_j |x^T A_j y|^2
    // over unit y and unit x, then polish with minimum-norm Gauss-Newton
    // steps, which keep converging at degenerate minima.
    y = rng.gaussian(Field::Complex, d).normalized();
    for (int it = 0; it < 50; ++it) {
      y = smallest_right_vector(row_system_for_y(x));
      x = smallest_right_vector(row_system_for_x(y));
    }
    Vector f(n);
    Matrix jac(n, 2 * d);
    for (int it = 0; it < 300; ++it) {
      for (int j = 0; j < n; ++j) {
        const Vector ay = ensemble[j] * y;
        f(j) = (x.transpose() * ay).value();
        jac.row(j).head(d) = ay.transpose();
        jac.row(j).tail(d) = (ensemble[j].transpose() * x).transpose();
      }
      if (f.cwiseAbs().maxCoeff() < 1e-15) break;
      Eigen::CompleteOrthogonalDecomposition<Matrix> cod(jac);
      cod.setThreshold(1e-12);
      const Vector step = cod.solve(f);
      x = (x - step.head(d)).normalized();
      y = (y - step.tail(d)).normalized();
    }
  }
  TangentPoint point;
  point.x = x;
  point.y = y;
  point.residual = incidence_residual(ensemble, x, y);
  if (!(point.residual < 1e-10)) return std::nullopt;

  Matrix jac(n, 2 * d);
  for (int j = 0; j < n; ++j) {
    jac.row(j).head(d) = (ensemble[j] * y).transpose();
    jac.row(j).tail(d) = (ensemble[j].transpose() * x).transpose();
  }
  point.dimension = 2 * d - linalg::numerical_rank(jac, tangent_tol);
  return point;
}

CertReport tangent_dimension_probe(const Ensemble& ensemble, int attempts, std::uint64_t seed,
                                   const Exec& exec) {
  if (ensemble.field() != Field::Real) {
    throw UnsupportedError("tangent: the incidence-variety probe applies to REAL ensembles");
  }
  if (attempts < 1) throw ParameterError("tangent_dimension_probe: attempts must be >= 1");
  const auto points = map_indices<std::optional<TangentPoint>>(
      static_cast<std::size_t>(attempts), exec,
      [&](std::size_t k) { return find_incidence_point(ensemble, seed, static_cast<int>(k)); });
  CertReport report;
  report.method = "tangent";
  report.stats.trials = attempts;
  report.stats.seed = seed;
  report.tolerances["incidence_residual"] = 1e-10;
  report.tolerances["tangent_rank"] = 1e-8;
  int found = 0;
  int max_dim = -1;
  for (const auto& p : points) {
    if (!p) continue;
    ++found;
    max_dim = std::max(max_dim, p->dimension);
  }
  const int threshold = ensemble.dim() - 1;
  report.stats.failures = attempts - found;
  report.stats.values["points_found"] = found;
  report.stats.values["threshold"] = threshold;
  if (found == 0) {
    report.verdict = Verdict::Inconclusive;
    return report;
  }
  report.stats.values["max_dimension"] = max_dim;
  report.verdict = max_dim <= threshold ? Verdict::LikelyPrAe : Verdict::Inconclusive;
  return report;
}

namespace {

enum class Route : char { None, Kernel, Injected, Solver };

struct TrialOutcome {
  Route route = Route::None;
  Vector x;
  Vector y;
};

// A near-collision only certifies a genuine second preimage when the
// first-order correction ||m(y) - b|| / sigma_r(J(y)) is small against the
// separation; r is the generic Jacobian rank. Near the degenerate set this
// rejects pairs that only agree because the map is ill-conditioned.
bool is_collision(const Ensemble& e, const Vector& x, const Vector& y, int generic_rank,
                  const MonteCarloOptions& options) {
  const double norm = x.norm();
  if (!(norm > 0.0)) return false;
  const double separation = phase_distance(x, y, e.field());
  if (separation <= options.separation_floor * norm) return false;
  const MeasurementVector bx = measure(e, x);
  const double residual = (measure(e, y) - bx).norm();
  if (!(residual < options.collision_tol * std::max(bx.norm(), 1e-300))) return false;
  if (residual == 0.0) return true;
  if (generic_rank == 0) return false;
  const Eigen::JacobiSVD<RealMatrix> svd(jacobian(e, y).values);
  const double sigma = svd.singularValues()(generic_rank - 1);
  return residual < options.certificate_ratio * sigma * separation;
}

int generic_jacobian_rank(const Ensemble& e, std::uint64_t seed) {
  int rank = 0;
  for (std::uint64_t k = 0; k < 8; ++k) {
    Rng rng = Rng::substream(seed, Stream::Survey, k);
    rank = std::max(rank, jacobian(e, rng.gaussian(e.field(), e.dim())).rank);
  }
  return rank;
}

}  // namespace

CertReport monte_carlo_injectivity(const Ensemble& ensemble, const MonteCarloOptions& options,
                                   const Exec& exec) {
  if (options.trials < 1) throw ParameterError("monte_carlo_injectivity: trials must be >= 1");
  if (options.restarts < 0) throw ParameterError("monte_carlo_injectivity: restarts must be >= 0");
  const QuadraticSystem system(ensemble);
  const Field field = ensemble.field();
  const int d = ensemble.dim();
  LocalSolveOptions local;
  local.max_iters = options.max_iters;
  const int generic_rank = generic_jacobian_rank(ensemble, options.seed);

  const auto outcomes =
      map_indices<TrialOutcome>(static_cast<std::size_t>(options.trials), exec, [&](std::size_t t) {
        TrialOutcome out;
        Rng rng = Rng::substream(options.seed, Stream::MonteCarlo, t);
        const Vector x = rng.gaussian(field, d);
        const Vector u = rng.gaussian(field, d);

        const Matrix dirs = collision_directions(ensemble, u);
        if (dirs.cols() > 0) {
          // Real combinations only: the polarization kernel is a real space.
          Vector v = dirs * rng.gaussian_real(static_cast<int>(dirs.cols())).cast<Scalar>();
          v *= u.norm() / v.norm();
          if (is_collision(ensemble, u + v, u - v, generic_rank, options)) {
            out.route = Route::Kernel;
            out.x = u + v;
            out.y = u - v;
            return out;
          }
        }
        if (options.injector) {
          if (auto pair = options.injector(rng)) {
            if (is_collision(ensemble, pair->first, pair->second, generic_rank, options)) {
              out.route = Route::Injected;
              out.x = pair->first;
              out.y = pair->second;
              return out;
            }
          }
        }
        const MeasurementVector b = measure(ensemble, x);
        const double scale = initial_scale(ensemble, b);
        for (int r = 0; r < options.restarts; ++r) {
          Rng start =
              Rng::substream(options.seed, Stream::MonteCarlo, t, static_cast<std::uint64_t>(r));
          Vector y0 = start.gaussian(field, d);
          y0 *= scale / y0.norm();
          const LocalSolve solve = damped_gauss_newton(system, b, y0, local);
          if (is_collision(ensemble, x, solve.y, generic_rank, options)) {
            out.route = Route::Solver;
            out.x = x;
            out.y = solve.y;
            return out;
          }
        }
        return out;
      });

  CertReport report;
  report.method = "montecarlo";
  report.stats.trials = options.trials;
  report.stats.seed = options.seed;
  report.tolerances["separation_floor"] = options.separation_floor;
  report.tolerances["collision_residual"] = options.collision_tol;
  report.tolerances["certificate_ratio"] = options.certificate_ratio;
  report.stats.values["generic_rank"] = generic_rank;
  int kernel = 0, injected = 0, solver = 0;
  for (const TrialOutcome& o : outcomes) {
    if (o.route == Route::None) continue;
    kernel += o.route == Route::Kernel;
    injected += o.route == Route::Injected;
    solver += o.route == Route::Solver;
    if (report.collisions.size() < 5) report.collisions.push_back(make_witness(ensemble, o.x, o.y));
  }
  const int collisions = kernel + injected + solver;
  const double rate = static_cast<double>(collisions) / options.trials;
  report.stats.failures = collisions;
  report.stats.values["collision_rate"] = rate;
  report.stats.values["kernel_collisions"] = kernel;
  report.stats.values["injected_collisions"] = injected;
  report.stats.values["solver_collisions"] = solver;
  report.stats.values["restarts"] = options.restarts;
  report.verdict = collisions == 0 ? Verdict::LikelyPrAe
                   : rate > 0.1    ? Verdict::LikelyNotPrAe
                                   : Verdict::Inconclusive;
  return report;
}

}  // namespace prae

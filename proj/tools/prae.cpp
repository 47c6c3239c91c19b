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

// prae: construct ensembles, measure, certify, find collisions, recover.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prae/ambiguity.hpp"
#include "prae/certify.hpp"
#include "prae/ensemble_io.hpp"
#include "prae/ensembles.hpp"
#include "prae/measurement.hpp"
#include "prae/recovery.hpp"
#include "prae/report_io.hpp"

namespace {

using prae::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::uint64_t seed = 0;
  int threads = 0;  // 0: PRAE_THREADS or the OpenMP default

  prae::Exec exec() const {
    return threads > 0 ? prae::Exec{threads} : prae::Exec::from_environment();
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    prae::io::write_atomic(path, text);
  }
}

prae::Ensemble load_checked(const std::string& path) {
  prae::Ensemble e = prae::io::read_ensemble(path);
  const prae::ValidationReport report = prae::validate(e);
  if (!report.pass) {
    std::string msg = path + ": ensemble fails validation";
    for (const auto& f : report.failures) msg += "\n  " + f;
    throw prae::FormatError(msg);
  }
  return e;
}

prae::RandomKind random_kind(const std::string& text) {
  if (text == "general") return prae::RandomKind::General;
  if (text == "projection") return prae::RandomKind::Projection;
  throw prae::ParameterError("unknown random kind '" + text + "' (general | projection)");
}

// --- construct -------------------------------------------------------------

struct ConstructArgs {
  std::string family;
  int d = 0;
  int n = 0;
  std::string field = "R";
  std::vector<int> ranks;
  std::string kind = "general";
  std::string frame;
  std::string out;
};

int run_construct(const ConstructArgs& a, const Common& c) {
  std::optional<prae::Ensemble> e;
  if (a.family == "hankel") {
    e = prae::hankel_ensemble(a.d);
  } else if (a.family == "minimal-complex") {
    e = prae::minimal_complex_ensemble(a.d);
  } else if (a.family == "random") {
    const prae::Field field = prae::field_from_string(a.field);
    if (a.n < 1) throw prae::ParameterError("--n must be >= 1");
    std::vector<int> ranks = a.ranks;
    if (ranks.empty()) ranks.assign(static_cast<std::size_t>(a.n), a.d);
    if (ranks.size() == 1) ranks.assign(static_cast<std::size_t>(a.n), ranks.front());
    e = prae::random_ensemble(field, a.d, a.n, ranks, random_kind(a.kind), c.seed, c.exec());
  } else if (a.family == "rank-one-frame") {
    if (a.frame.empty()) throw prae::ParameterError("--frame FILE is required for rank-one-frame");
    e = prae::rank_one_from_frame(prae::io::read_frame(a.frame));
  } else {
    throw prae::ParameterError("unknown family '" + a.family + "'");
  }
  emit(a.out, prae::io::dump(prae::io::ensemble_to_json(*e)));
  return kExitOk;
}

// --- validate --------------------------------------------------------------

int run_validate(const std::string& path, const std::string& out) {
  const prae::Ensemble e = prae::io::read_ensemble(path);
  const prae::ValidationReport report = prae::validate(e);
  emit(out, prae::io::dump(prae::io::to_json(report)));
  return report.pass ? kExitOk : kExitUsage;
}

// --- measure ---------------------------------------------------------------

int run_measure(const std::string& ensemble, const std::string& signal, const std::string& out) {
  const prae::Ensemble e = load_checked(ensemble);
  const prae::Vector x = prae::io::read_signal(signal);
  emit(out, prae::io::measurements_to_text(prae::measure(e, x)));
  return kExitOk;
}

// --- certify ---------------------------------------------------------------

struct CertifyArgs {
  std::string ensemble;
  std::string frame;
  std::string method = "montecarlo";
  int trials = 0;  // method default when 0
  int restarts = 4;
  std::string json;
  std::string expect;
};

prae::Frame frame_for(const CertifyArgs& a) {
  if (!a.frame.empty()) return prae::io::read_frame(a.frame);
  const prae::Ensemble e = load_checked(a.ensemble);
  auto frame = prae::frame_from_rank_one(e);
  if (!frame) throw prae::ParameterError(a.ensemble + ": not a rank-one ensemble");
  return *frame;
}

int run_certify(const CertifyArgs& a, const Common& c) {
  if (a.ensemble.empty() == a.frame.empty()) {
    throw prae::ParameterError("pass exactly one of --ensemble and --frame");
  }
  prae::CertReport report;
  prae::Field field = prae::Field::Real;
  if (a.method == "exact-rank-one") {
    const prae::Frame f = frame_for(a);
    field = f.field();
    report = prae::real_rank_one_exact(f, c.exec());
  } else if (a.method == "spark") {
    const prae::Frame f = frame_for(a);
    field = f.field();
    const bool spark = prae::full_spark(f);
    report.method = "spark";
    report.stats.values["full_spark"] = spark ? 1 : 0;
    report.tolerances["rank"] = prae::linalg::kRankTolerance;
    // Full spark decides PR-ae exactly for real frames with N = d + 1.
    if (f.field() == prae::Field::Real && f.size() == f.dim() + 1) {
      report.verdict = spark ? prae::Verdict::PrAe : prae::Verdict::NotPrAe;
    }
  } else {
    const prae::Ensemble e = a.frame.empty()
                                 ? load_checked(a.ensemble)
                                 : prae::rank_one_from_frame(prae::io::read_frame(a.frame));
    field = e.field();
    if (a.method == "survey") {
      report = prae::jacobian_rank_survey(e, a.trials > 0 ? a.trials : 100, c.seed, c.exec());
    } else if (a.method == "tangent") {
      report = prae::tangent_dimension_probe(e, a.trials > 0 ? a.trials : 10, c.seed, c.exec());
    } else if (a.method == "montecarlo") {
      prae::MonteCarloOptions options;
      options.trials = a.trials > 0 ? a.trials : 200;
      options.restarts = a.restarts;
      options.seed = c.seed;
      report = prae::monte_carlo_injectivity(e, options, c.exec());
    } else {
      throw prae::ParameterError("unknown method '" + a.method + "'");
    }
  }
  report.stats.seed = c.seed;
  Json out = prae::io::to_json(report, field);
  if (!a.json.empty()) emit(a.json, prae::io::dump(out));
  std::cout << prae::to_string(report.verdict) << "\n";
  const bool negative =
      report.verdict == prae::Verdict::NotPrAe || report.verdict == prae::Verdict::LikelyNotPrAe;
  return a.expect == "pr-ae" && negative ? kExitVerdict : kExitOk;
}

// --- collide ---------------------------------------------------------------

struct CollideArgs {
  std::string frame;
  std::string ensemble;
  std::string method;
  int d = 0;
  std::string json;
};

int run_collide(const CollideArgs& a, const Common& c) {
  if (a.frame.empty() == a.ensemble.empty()) {
    throw prae::ParameterError("pass exactly one of --frame and --ensemble");
  }
  const std::string method = a.method.empty() ? (a.frame.empty() ? "kernel" : "gram") : a.method;
  Json out;
  out["method"] = method;
  out["seed"] = c.seed;
  std::optional<prae::CollisionWitness> witness;
  prae::Field field = prae::Field::Complex;
  int attempts = 0;

  if (method == "gram") {
    if (a.frame.empty()) throw prae::ParameterError("--method gram needs --frame FILE | gram");
    if (a.frame == "gram") {
      if (a.d < 2) throw prae::ParameterError("--frame gram needs --d >= 2");
      prae::Rng rng = prae::Rng::substream(c.seed, prae::Stream::Ensemble, 0);
      const prae::Matrix g = rng.gaussian_matrix(prae::Field::Complex, a.d, a.d - 1);
      prae::Matrix cols(a.d, 2 * a.d - 1);
      cols << prae::Matrix::Identity(a.d, a.d), g;
      out["frame"] = prae::io::frame_to_json(prae::Frame(prae::Field::Complex, cols));
      const auto result = prae::gram_collision_witness(g, c.seed);
      witness = result.witness;
      attempts = result.attempts;
    } else {
      const prae::Frame frame = prae::io::read_frame(a.frame);
      const auto result = prae::frame_collision_witness(frame, c.seed);
      witness = result.witness;
      attempts = result.attempts;
    }
  } else if (method == "kernel") {
    const prae::Ensemble e = a.ensemble.empty()
                                 ? prae::rank_one_from_frame(prae::io::read_frame(a.frame))
                                 : load_checked(a.ensemble);
    field = e.field();
    for (; attempts < prae::kGramRetryBudget && !witness; ++attempts) {
      prae::Rng rng =
          prae::Rng::substream(c.seed, prae::Stream::Witness, static_cast<std::uint64_t>(attempts));
      const prae::Vector u = rng.gaussian(field, e.dim());
      const prae::Matrix dirs = prae::collision_directions(e, u);
      if (dirs.cols() == 0) continue;
      prae::Vector v = dirs * rng.gaussian_real(static_cast<int>(dirs.cols())).cast<prae::Scalar>();
      v *= u.norm() / v.norm();
      prae::CollisionWitness w = prae::kernel_collision(e, u, v);
      if (w.valid) witness = std::move(w);
    }
  } else {
    throw prae::ParameterError("unknown method '" + method + "' (gram | kernel)");
  }

  out["attempts"] = attempts;
  out["found"] = witness.has_value();
  if (witness) {
    const Json fields = prae::io::to_json(*witness, field);
    for (const auto& [key, value] : fields.items()) out[key] = value;
  }
  const std::string text = prae::io::dump(out);
  emit(a.json, text);
  if (!a.json.empty()) std::cout << (witness ? "FOUND" : "NOT_FOUND") << "\n";
  return witness ? kExitOk : kExitVerdict;
}

// --- recover ---------------------------------------------------------------

struct RecoverArgs {
  std::string ensemble;
  std::string measurements;
  std::string signal;
  std::string truth;
  int restarts = 20;
  int max_iters = 200;
  std::string json;
};

int run_recover(const RecoverArgs& a, const Common& c) {
  const prae::Ensemble e = load_checked(a.ensemble);
  if (a.measurements.empty() == a.signal.empty()) {
    throw prae::ParameterError("pass exactly one of --measurements and --signal");
  }
  std::optional<prae::Vector> truth;
  prae::MeasurementVector b;
  if (!a.signal.empty()) {
    truth = prae::io::read_signal(a.signal);
    b = prae::measure(e, *truth);
  } else {
    b = prae::io::read_measurements(a.measurements);
    if (!a.truth.empty()) truth = prae::io::read_signal(a.truth);
  }
  if (b.size() != e.size()) throw prae::ParameterError("measurement count does not match N");
  prae::RecoveryOptions options;
  options.restarts = a.restarts;
  options.max_iters = a.max_iters;
  options.seed = c.seed;
  const prae::RecoveryResult result = prae::recover(e, b, options, truth);
  Json out = prae::io::to_json(result, e.field());
  out["seed"] = c.seed;
  emit(a.json, prae::io::dump(out));
  if (!a.json.empty()) std::cout << (result.converged ? "CONVERGED" : "NOT_CONVERGED") << "\n";
  return kExitOk;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string field = "R";
  int d = 4;
  int n_min = 0;
  int n_max = 0;
  std::string kind = "general";
  int rank = 0;
  int trials = 10;
  int restarts = 20;
  int max_iters = 200;
  std::string out;
};

int run_sweep(const SweepArgs& a, const Common& c) {
  prae::SweepConfig cfg;
  cfg.field = prae::field_from_string(a.field);
  cfg.d = a.d;
  cfg.n_min = a.n_min;
  cfg.n_max = a.n_max;
  cfg.kind = random_kind(a.kind);
  cfg.rank = a.rank;
  cfg.trials = a.trials;
  cfg.restarts = a.restarts;
  cfg.max_iters = a.max_iters;
  cfg.seed = c.seed;
  emit(a.out, prae::sweep_csv(prae::sweep(cfg, c.exec())));
  return kExitOk;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "RNG seed (recorded in outputs)");
  sub->add_option("--threads", c.threads, "worker threads (default: PRAE_THREADS)")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase retrievability toolkit for quadratic measurement ensembles"};
  app.require_subcommand(1, 1);
  Common common;

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build an ensemble and write it as JSON");
  construct->add_option("--family", ca.family, "hankel | minimal-complex | random | rank-one-frame")
      ->required();
  construct->add_option("--d", ca.d, "dimension")->check(CLI::PositiveNumber);
  construct->add_option("--n", ca.n, "number of matrices (random)");
  construct->add_option("--field", ca.field, "R | C (random)");
  construct->add_option("--ranks", ca.ranks, "one rank for all matrices, or one per matrix");
  construct->add_option("--kind", ca.kind, "general | projection (random)");
  construct->add_option("--frame", ca.frame, "frame file (rank-one-frame)");
  construct->add_option("--out", ca.out, "output file (default stdout)");
  add_common(construct, common);

  std::string validate_in, validate_out;
  auto* validate = app.add_subcommand("validate", "check the invariants of an ensemble file");
  validate->add_option("--ensemble", validate_in)->required();
  validate->add_option("--json", validate_out, "report file (default stdout)");

  std::string measure_ensemble, measure_signal, measure_out;
  auto* measure = app.add_subcommand("measure", "evaluate x^* A_j x for a signal");
  measure->add_option("--ensemble", measure_ensemble)->required();
  measure->add_option("--signal", measure_signal)->required();
  measure->add_option("--out", measure_out, "output file (default stdout)");

  CertifyArgs cert;
  auto* certify = app.add_subcommand("certify", "decide or estimate phase retrievability");
  certify->add_option("--ensemble", cert.ensemble);
  certify->add_option("--frame", cert.frame);
  certify->add_option("--method", cert.method)
      ->check(CLI::IsMember({"exact-rank-one", "spark", "survey", "tangent", "montecarlo"}));
  certify->add_option("--trials", cert.trials, "trials / samples / attempts");
  certify->add_option("--restarts", cert.restarts);
  certify->add_option("--json", cert.json);
  certify->add_option("--expect", cert.expect, "exit 1 on a negative verdict")
      ->check(CLI::IsMember({"pr-ae"}));
  add_common(certify, common);

  CollideArgs col;
  auto* collide = app.add_subcommand("collide", "construct a collision witness");
  collide->add_option("--frame", col.frame, "frame file, or 'gram' for a random [I, G]");
  collide->add_option("--ensemble", col.ensemble);
  collide->add_option("--method", col.method)->check(CLI::IsMember({"gram", "kernel"}));
  collide->add_option("--d", col.d, "dimension for --frame gram");
  collide->add_option("--json", col.json, "output file (default stdout)");
  add_common(collide, common);

  RecoverArgs rec;
  auto* recover = app.add_subcommand("recover", "recover a signal from its measurements");
  recover->add_option("--ensemble", rec.ensemble)->required();
  recover->add_option("--measurements", rec.measurements, "JSON array b");
  recover->add_option("--signal", rec.signal, "ground truth; b is computed from it");
  recover->add_option("--truth", rec.truth, "ground truth for the phase error");
  recover->add_option("--restarts", rec.restarts)->check(CLI::PositiveNumber);
  recover->add_option("--max-iters", rec.max_iters)->check(CLI::PositiveNumber);
  recover->add_option("--json", rec.json, "output file (default stdout)");
  add_common(recover, common);

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "recovery success rate over a range of N");
  sweep->add_option("--field", sw.field);
  sweep->add_option("--d", sw.d)->check(CLI::PositiveNumber);
  sweep->add_option("--n-min", sw.n_min)->required();
  sweep->add_option("--n-max", sw.n_max)->required();
  sweep->add_option("--kind", sw.kind);
  sweep->add_option("--rank", sw.rank, "0 for full rank");
  sweep->add_option("--trials", sw.trials)->check(CLI::NonNegativeNumber);
  sweep->add_option("--restarts", sw.restarts)->check(CLI::PositiveNumber);
  sweep->add_option("--max-iters", sw.max_iters)->check(CLI::PositiveNumber);
  sweep->add_option("--out", sw.out, "CSV file (default stdout)");
  add_common(sweep, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*construct) {
      if (ca.family != "rank-one-frame" && ca.d < 1) throw prae::ParameterError("--d is required");
      return run_construct(ca, common);
    }
    if (*validate) return run_validate(validate_in, validate_out);
    if (*measure) return run_measure(measure_ensemble, measure_signal, measure_out);
    if (*certify) return run_certify(cert, common);
    if (*collide) return run_collide(col, common);
    if (*recover) return run_recover(rec, common);
    if (*sweep) return run_sweep(sw, common);
  } catch (const prae::UnsupportedError& e) {
    std::cerr << "prae: unsupported: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "prae: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

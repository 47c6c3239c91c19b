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

#include "prae/report_io.hpp"

#include <cmath>
#include <cstdint>

namespace prae::io {

namespace {

// Counts and flags stored as doubles print as integers.
Json number(double value) {
  if (std::isfinite(value) && std::trunc(value) == value && std::abs(value) < 9e15) {
    return static_cast<std::int64_t>(value);
  }
  return value;
}

Json one_based(const std::vector<int>& idx) {
  Json out = Json::array();
  for (int i : idx) out.push_back(i + 1);
  return out;
}

}  // namespace

Json to_json(const CollisionWitness& witness, Field field) {
  Json out;
  out["type"] = "collision";
  out["x"] = vector_to_json(witness.x, field);
  out["y"] = vector_to_json(witness.y, field);
  out["residual"] = witness.residual;
  out["separation"] = witness.separation;
  out["scale"] = witness.scale;
  out["valid"] = witness.valid;
  return out;
}

Json to_json(const SubsetPairWitness& witness) {
  Json out;
  out["type"] = "partition";
  out["I"] = one_based(witness.I);
  out["J"] = one_based(witness.J);
  out["dim_I_perp"] = witness.dim_I_perp;
  out["dim_J_perp"] = witness.dim_J_perp;
  out["dim_sum"] = witness.dim_sum;
  return out;
}

Json to_json(const CertReport& report, Field field) {
  Json out;
  out["verdict"] = std::string(to_string(report.verdict));
  out["method"] = report.method;
  Json witnesses = Json::array();
  for (const auto& w : report.subset_witnesses) witnesses.push_back(to_json(w));
  for (const auto& w : report.collisions) witnesses.push_back(to_json(w, field));
  out["witnesses"] = std::move(witnesses);
  Json stats;
  stats["trials"] = report.stats.trials;
  stats["failures"] = report.stats.failures;
  stats["seed"] = report.stats.seed ? Json(*report.stats.seed) : Json(nullptr);
  for (const auto& [key, value] : report.stats.values) stats[key] = number(value);
  out["stats"] = std::move(stats);
  Json tolerances = Json::object();
  for (const auto& [key, value] : report.tolerances) tolerances[key] = value;
  out["tolerances"] = std::move(tolerances);
  return out;
}

Json to_json(const RecoveryResult& result, Field field) {
  Json out;
  out["candidate"] = vector_to_json(result.candidate, field);
  out["residual"] = result.residual;
  out["restarts_used"] = result.restarts_used;
  out["converged"] = result.converged;
  if (result.phase_error) out["phase_error"] = *result.phase_error;
  return out;
}

Json to_json(const ValidationReport& report) {
  Json out;
  out["pass"] = report.pass;
  out["failures"] = report.failures;
  Json mats = Json::array();
  for (const auto& m : report.matrices) {
    Json item;
    item["self_adjoint_defect"] = m.self_adjoint_defect;
    item["imaginary_defect"] = m.imaginary_defect;
    item["rank"] = m.rank;
    if (m.projection_defect) item["projection_defect"] = *m.projection_defect;
    mats.push_back(std::move(item));
  }
  out["matrices"] = std::move(mats);
  return out;
}

}  // namespace prae::io

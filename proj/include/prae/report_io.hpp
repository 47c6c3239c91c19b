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

#include "prae/certify.hpp"
#include "prae/ensemble_io.hpp"
#include "prae/ensembles.hpp"
#include "prae/recovery.hpp"
#include "prae/witness.hpp"

namespace prae::io {

/// {"x", "y", "residual", "separation", "valid"}.
Json to_json(const CollisionWitness& witness, Field field);

/// {"type": "partition", "I", "J" (1-based), "dim_I_perp", "dim_J_perp", "dim_sum"}.
Json to_json(const SubsetPairWitness& witness);

/// {"verdict", "method", "witnesses", "stats", "tolerances"}.
Json to_json(const CertReport& report, Field field);

/// {"candidate", "residual", "restarts_used", "converged"[, "phase_error"]}.
Json to_json(const RecoveryResult& result, Field field);

/// {"pass", "failures", "matrices"}.
Json to_json(const ValidationReport& report);

}  // namespace prae::io

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

#include "prae/witness.hpp"

#include <algorithm>

#include "prae/measurement.hpp"

namespace prae {

CollisionWitness make_witness(const Ensemble& ensemble, Vector x, Vector y) {
  CollisionWitness w;
  const MeasurementVector mx = measure(ensemble, x);
  const MeasurementVector my = measure(ensemble, y);
  w.residual = (mx - my).cwiseAbs().maxCoeff();
  w.separation = phase_distance(x, y, ensemble.field());
  const double norm = std::max(x.norm(), y.norm());
  w.scale = ensemble.max_norm() * norm * norm;
  w.valid = w.residual < kWitnessResidualTolerance * w.scale &&
            w.separation > kWitnessSeparationFloor * norm;
  w.x = std::move(x);
  w.y = std::move(y);
  return w;
}

}  // namespace prae

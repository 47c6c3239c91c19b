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

#include "prae/core.hpp"
#include "prae/ensembles.hpp"

namespace prae {

inline constexpr double kWitnessResidualTolerance = 1e-10;
inline constexpr double kWitnessSeparationFloor = 1e-6;

/// A pair with (numerically) equal measurements that is not a phase
/// rotation of itself. residual and separation are always recomputed from
/// x and y by make_witness; never fill them in by hand.
struct CollisionWitness {
  Vector x;
  Vector y;
  double residual = 0.0;    // max_j |m_j(x) - m_j(y)|
  double separation = 0.0;  // phase_distance(x, y)
  double scale = 0.0;       // max_j ||A_j||_F * max(|x|, |y|)^2
  bool valid = false;       // residual < 1e-10 scale and separation > 1e-6 max(|x|, |y|)
};

CollisionWitness make_witness(const Ensemble& ensemble, Vector x, Vector y);

}  // namespace prae

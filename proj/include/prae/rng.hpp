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
#include <random>

#include "prae/core.hpp"

namespace prae {

/// Purpose tags for substreams. Two consumers with different tags never
/// share random numbers even under the same seed and index.
enum class Stream : std::uint64_t {
  Ensemble = 1,
  Survey,
  Tangent,
  MonteCarlo,
  Witness,
  Recovery,
  Sweep,
  Test,
};

/// Seedable generator. Substreams are derived by hashing (seed, stream,
/// index), so the draws of work item i never depend on how many items ran
/// before it or on which thread.
class Rng {
 public:
  explicit Rng(std::uint64_t state);

  static Rng substream(std::uint64_t seed, Stream stream, std::uint64_t index);
  static Rng substream(std::uint64_t seed, Stream stream, std::uint64_t index,
                       std::uint64_t sub_index);

  double normal();
  double uniform();  // [0, 1)

  /// Standard Gaussian vector; complex entries are (g1 + i g2) / sqrt(2).
  Vector gaussian(Field field, int d);
  RealVector gaussian_real(int d);
  Matrix gaussian_matrix(Field field, int rows, int cols);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace prae

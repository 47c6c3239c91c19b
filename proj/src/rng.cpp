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

#include "prae/rng.hpp"

#include <cmath>

namespace prae {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t state) : engine_(state) {}

Rng Rng::substream(std::uint64_t seed, Stream stream, std::uint64_t index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  h = splitmix64(h ^ index);
  return Rng(h);
}

Rng Rng::substream(std::uint64_t seed, Stream stream, std::uint64_t index,
                   std::uint64_t sub_index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  h = splitmix64(h ^ index);
  h = splitmix64(h ^ (sub_index + 0x5851f42d4c957f2dULL));
  return Rng(h);
}

double Rng::normal() { return normal_(engine_); }

double Rng::uniform() { return uniform_(engine_); }

Vector Rng::gaussian(Field field, int d) {
  Vector x(d);
  if (field == Field::Real) {
    for (int i = 0; i < d; ++i) x(i) = Scalar(normal(), 0.0);
  } else {
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
      const double re = normal();
      const double im = normal();
      x(i) = Scalar(s * re, s * im);
    }
  }
  return x;
}

RealVector Rng::gaussian_real(int d) {
  RealVector x(d);
  for (int i = 0; i < d; ++i) x(i) = normal();
  return x;
}

Matrix Rng::gaussian_matrix(Field field, int rows, int cols) {
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c) m.col(c) = gaussian(field, rows);
  return m;
}

}  // namespace prae

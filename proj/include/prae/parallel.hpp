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

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

namespace prae {

/// Worker budget for the data-parallel kernels. threads <= 1 runs the
/// serial reference loop; anything larger runs the OpenMP kernel. Both
/// produce identical results because every work item owns its RNG
/// substream and writes only its own output slot.
struct Exec {
  int threads = 1;

  static Exec serial() { return Exec{1}; }
  /// PRAE_THREADS if set, else the OpenMP default.
  static Exec from_environment();
};

/// Runs fn(i) for i in [0, n). Exceptions are collected and the one from
/// the lowest index is rethrown after the loop.
void for_each_index(std::size_t n, const Exec& exec, void (*trampoline)(void*, std::size_t),
                    void* ctx);

template <class Fn>
void for_each_index(std::size_t n, const Exec& exec, Fn&& fn) {
  using F = std::remove_reference_t<Fn>;
  auto call = [](void* ctx, std::size_t i) { (*static_cast<F*>(ctx))(i); };
  for_each_index(n, exec, +call, const_cast<void*>(static_cast<const void*>(&fn)));
}

/// fn(i) for each i, collected in order.
template <class T, class Fn>
std::vector<T> map_indices(std::size_t n, const Exec& exec, Fn&& fn) {
  std::vector<T> out(n);
  for_each_index(n, exec, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace prae

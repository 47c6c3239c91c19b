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

#include "prae/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace prae {

Exec Exec::from_environment() {
  int threads = omp_get_max_threads();
  if (const char* env = std::getenv("PRAE_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) threads = cap;
    } catch (const std::exception&) {
      // ignore malformed values, keep the OpenMP default
    }
  }
  return Exec{threads < 1 ? 1 : threads};
}

void for_each_index(std::size_t n, const Exec& exec, void (*trampoline)(void*, std::size_t),
                    void* ctx) {
  if (exec.threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) trampoline(ctx, i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for num_threads(exec.threads) schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      trampoline(ctx, static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace prae

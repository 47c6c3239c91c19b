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

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "prae/parallel.hpp"

namespace prae {
namespace {

TEST(Parallel, MapPreservesOrder) {
  for (int threads : {1, 4}) {
    const auto out =
        map_indices<int>(100, Exec{threads}, [](std::size_t i) { return static_cast<int>(i * i); });
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
  }
}

TEST(Parallel, RunsEveryIndexOnce) {
  std::atomic<int> sum{0};
  for_each_index(1000, Exec{4}, [&](std::size_t i) { sum += static_cast<int>(i); });
  EXPECT_EQ(sum.load(), 999 * 1000 / 2);
}

TEST(Parallel, RethrowsLowestIndexFailure) {
  for (int threads : {1, 4}) {
    try {
      for_each_index(50, Exec{threads}, [](std::size_t i) {
        if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
      });
      FAIL() << "expected an exception";
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "7");
    }
  }
}

TEST(Parallel, EnvironmentCapsThreads) {
  ::setenv("PRAE_THREADS", "3", 1);
  EXPECT_EQ(Exec::from_environment().threads, 3);
  ::setenv("PRAE_THREADS", "junk", 1);
  EXPECT_GE(Exec::from_environment().threads, 1);
  ::unsetenv("PRAE_THREADS");
  EXPECT_GE(Exec::from_environment().threads, 1);
  EXPECT_EQ(Exec::serial().threads, 1);
}

}  // namespace
}  // namespace prae

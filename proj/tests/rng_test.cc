// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bed/rng.h"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

namespace bed {
namespace {

TEST(Rng, DeterministicPerSeedAndStream) {
  Rng a(5, 1), b(5, 1), c(5, 2), d(6, 1);
  const auto first = a();
  EXPECT_EQ(first, b());
  EXPECT_NE(first, c());
  EXPECT_NE(first, d());
}

TEST(Rng, SplitIsIndependentOfParentPosition) {
  Rng a(9);
  const Rng child_before = a.split("x");
  a();
  a();
  Rng c1 = child_before;
  Rng c2 = a.split("x");
  EXPECT_EQ(c1(), c2());
  EXPECT_NE(Rng(9).split("x")(), Rng(9).split("y")());
}

TEST(Rng, UniformRange) {
  Rng r(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(Rng, BelowIsUniform) {
  Rng r(2);
  std::array<int, 7> counts{};
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const auto v = r.below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c / static_cast<double>(draws), 1.0 / 7, 0.01);
  EXPECT_EQ(Rng(3).below(1), 0u);
}

TEST(Rng, BernoulliEdgeCases) {
  Rng r(4);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_FALSE(r.bernoulli(0.0));
    EXPECT_TRUE(r.bernoulli(1.0));
  }
}

TEST(HashTag, StableValues) {
  EXPECT_EQ(hash_tag(""), 0xcbf29ce484222325ULL);
  EXPECT_NE(hash_tag("greedy"), hash_tag("uniform"));
}

}  // namespace
}  // namespace bed

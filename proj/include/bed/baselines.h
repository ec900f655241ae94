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

#ifndef BED_BASELINES_H_
#define BED_BASELINES_H_

#include <string_view>
#include <vector>

#include "bed/criteria.h"
#include "bed/dataset.h"
#include "bed/rng.h"
#include "bed/selector.h"

namespace bed {

enum class BaselineKind { kGreedy, kUniform, kPredictiveLength };

BaselineKind parse_baseline_kind(std::string_view name);

struct GreedyPath {
  std::vector<int> order;      // indices in the order they were added
  std::vector<double> values;  // f_A after each addition
};

// Bottom-up greedy: k times, add the index whose inclusion gives the
// smallest f_A, ties to the lowest index. O(n k d^2).
GreedyPath greedy_path(const DesignMatrix& x, const Prior& prior, const Criterion& crit, int k);

DesignResult greedy_bottom_up(const DesignMatrix& x, const Prior& prior, const Criterion& crit,
                              int k);

// Uniformly random k-subset of [n], ascending.
std::vector<int> uniform_subset(int n, int k, Rng& rng);

// k indices without replacement, each draw proportional to ||x_i|| (or
// ||x_i||^2) over the indices not yet drawn. Zero rows are drawn only after
// every nonzero row is taken. Throws AllZeroRows.
std::vector<int> predictive_length(const DesignMatrix& x, int k, Rng& rng,
                                   bool squared_norms = false);

}  // namespace bed

#endif  // BED_BASELINES_H_

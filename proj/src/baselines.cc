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

#include "bed/baselines.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bed/errors.h"
#include "incremental.h"

namespace bed {

BaselineKind parse_baseline_kind(std::string_view name) {
  if (name == "greedy") return BaselineKind::kGreedy;
  if (name == "uniform") return BaselineKind::kUniform;
  if (name == "predictive-length" || name == "plen") return BaselineKind::kPredictiveLength;
  throw std::invalid_argument("unknown baseline '" + std::string(name) + "'");
}

namespace {

void check_k(int n, int k) {
  if (k < 0 || k > n) {
    throw std::invalid_argument("need 0 <= k <= n (k = " + std::to_string(k) +
                                ", n = " + std::to_string(n) + ")");
  }
}

}  // namespace

GreedyPath greedy_path(const DesignMatrix& x, const Prior& prior, const Criterion& crit, int k) {
  check_k(x.n(), k);
  internal::IncrementalDesign design(x, prior, crit);
  std::vector<char> taken(x.n(), 0);
  GreedyPath path;
  for (int step = 0; step < k; ++step) {
    const int next = design.best_candidate(taken);
    design.add(next);
    taken[next] = 1;
    path.order.push_back(next);
    path.values.push_back(design.value());
  }
  return path;
}

DesignResult greedy_bottom_up(const DesignMatrix& x, const Prior& prior, const Criterion& crit,
                              int k) {
  GreedyPath path = greedy_path(x, prior, crit, k);
  DesignResult result;
  result.subset = std::move(path.order);
  std::sort(result.subset.begin(), result.subset.end());
  result.value = eval(crit, subset_covariance(x, result.subset), prior);
  result.sampled_size = k;
  return result;
}

std::vector<int> uniform_subset(int n, int k, Rng& rng) {
  check_k(n, k);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int j = 0; j < k; ++j) {
    const auto pick = j + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - j)));
    std::swap(idx[j], idx[pick]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<int> predictive_length(const DesignMatrix& x, int k, Rng& rng, bool squared_norms) {
  const int n = x.n();
  check_k(n, k);
  Vector weight = x.x().rowwise().norm();
  if (squared_norms) weight = weight.array().square();
  if (!(weight.maxCoeff() > 0.0)) throw AllZeroRows();

  std::vector<int> out;
  std::vector<char> taken(n, 0);
  double remaining = weight.sum();
  for (int draw = 0; draw < k; ++draw) {
    int pick = -1;
    if (remaining > 0.0) {
      double u = rng.uniform() * remaining;
      for (int i = 0; i < n; ++i) {
        if (taken[i] || weight(i) == 0.0) continue;
        pick = i;  // last positive candidate absorbs rounding
        u -= weight(i);
        if (u < 0.0) break;
      }
    }
    if (pick < 0) {
      // Only zero rows remain.
      std::vector<int> rest;
      for (int i = 0; i < n; ++i) {
        if (!taken[i]) rest.push_back(i);
      }
      pick = rest[rng.below(rest.size())];
    }
    taken[pick] = 1;
    remaining -= weight(pick);
    if (remaining < 1e-12 * weight.sum()) {
      // Recompute to shed accumulated cancellation.
      remaining = 0.0;
      for (int i = 0; i < n; ++i) {
        if (!taken[i]) remaining += weight(i);
      }
    }
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bed

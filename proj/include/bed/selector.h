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

// Size-k design selection by rejection sampling from the regularized DPP.
//
// Given fractional weights w (0 <= w_i <= 1, sum w_i = k) with
// d_w = d_A(Sigma_w), draws S ~ DPPreg_p(X, A) with p = w / (1 + eps) until
// |S| <= k and
//
//   f_A(X_S^T X_S) <= (1 + 8 d_w/k + 8 sqrt(ln(k/d_w)/k)) * f_A(Sigma_w),
//
// then pads S to exactly k indices. Padding never increases f_A, so the
// accepted inequality also holds for the returned subset. The inequality is
// guaranteed to be reachable (with probability Omega(d_w/k) per draw) when
// k >= 4 d_w; below that the selector still runs with eps = 1 and flags the
// result.

#ifndef BED_SELECTOR_H_
#define BED_SELECTOR_H_

#include <string_view>
#include <vector>

#include "bed/criteria.h"
#include "bed/dataset.h"
#include "bed/relax.h"
#include "bed/rng.h"

namespace bed {

enum class AcceptedBy {
  kBoundAccept,
  kBestSeenFallback,
  kNotApplicable,  // deterministic and baseline methods
};

std::string_view accepted_by_name(AcceptedBy a);

enum class PadRule {
  kGreedy,  // add the index with the largest criterion decrease, ties to lowest
  kRandom,  // uniformly random remaining indices
};

PadRule parse_pad_rule(std::string_view name);

struct SelectOptions {
  int max_attempts = 1000;
  PadRule pad = PadRule::kGreedy;
};

struct DesignResult {
  std::vector<int> subset;  // k distinct indices, ascending
  double value = 0.0;       // f_A(X_S^T X_S) of the returned subset
  int attempts = 0;
  AcceptedBy accepted_by = AcceptedBy::kNotApplicable;
  double eps_used = 0.0;
  double d_w = 0.0;
  double base_value = 0.0;    // f_A(Sigma_w)
  double bound_factor = 0.0;  // 1 + 8 d_w/k + 8 sqrt(ln(k/d_w)/k)
  bool in_guarantee_regime = false;  // k >= 4 d_w
  int sampled_size = 0;              // |S| before padding
};

// 1 + 8 d_w/k + 8 sqrt(max(0, ln(k/d_w))/k), with d_w floored at 1e-6.
double certificate_factor(double d_w, int k);

// min(1, 4 d_w/k + 6 sqrt(max(0, ln(k/d_w))/k)), with d_w floored at 1e-6.
double rejection_eps(double d_w, int k);

// Throws InfeasibleWeights, SingularMatrix, NoSizeFeasibleDraw.
DesignResult select(const DesignMatrix& x, const Prior& prior, const Criterion& crit,
                    const Vector& w, int k, Rng& rng, const SelectOptions& opts = {});

// w = (k/n, ..., k/n); then d_w = d_{(n/k)A}(Sigma_X) and f_A(Sigma_w) =
// f_A((k/n) Sigma_X).
DesignResult select_uniform(const DesignMatrix& x, const Prior& prior, const Criterion& crit,
                            int k, Rng& rng, const SelectOptions& opts = {});

// w = w* from the continuous relaxation. base_value is its objective.
DesignResult select_relaxed(const DesignMatrix& x, const Prior& prior, const Criterion& crit,
                            int k, Rng& rng, const RelaxConfig& relax_cfg = {},
                            const SelectOptions& opts = {});

// Same as select_relaxed but with a precomputed relaxation solution.
DesignResult select_relaxed(const DesignMatrix& x, const Prior& prior, const Criterion& crit,
                            int k, Rng& rng, const RelaxSolution& relaxed,
                            const SelectOptions& opts = {});

}  // namespace bed

#endif  // BED_SELECTOR_H_

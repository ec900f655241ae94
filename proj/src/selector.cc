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

#include "bed/selector.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "bed/errors.h"
#include "bed/rdpp.h"
#include "incremental.h"

namespace bed {

std::string_view accepted_by_name(AcceptedBy a) {
  switch (a) {
    case AcceptedBy::kBoundAccept: return "bound-accept";
    case AcceptedBy::kBestSeenFallback: return "best-seen-fallback";
    case AcceptedBy::kNotApplicable: return "n/a";
  }
  return "?";
}

PadRule parse_pad_rule(std::string_view name) {
  if (name == "greedy") return PadRule::kGreedy;
  if (name == "random") return PadRule::kRandom;
  throw std::invalid_argument("unknown pad rule '" + std::string(name) + "'");
}

namespace {

constexpr double kDwFloor = 1e-6;
constexpr double kWeightSumTol = 1e-6;

double log_ratio_term(double d_w, int k) {
  const double ratio = static_cast<double>(k) / std::max(d_w, kDwFloor);
  return std::sqrt(std::max(0.0, std::log(ratio)) / k);
}

std::vector<int> pad_subset(const DesignMatrix& x, const Prior& prior, const Criterion& crit,
                            std::vector<int> subset, int k, PadRule rule, Rng& rng) {
  const int n = x.n();
  std::vector<char> taken(n, 0);
  for (int i : subset) taken[i] = 1;
  if (static_cast<int>(subset.size()) >= k) return subset;

  if (rule == PadRule::kRandom) {
    std::vector<int> rest;
    for (int i = 0; i < n; ++i) {
      if (!taken[i]) rest.push_back(i);
    }
    const int need = k - static_cast<int>(subset.size());
    for (int j = 0; j < need; ++j) {
      const auto pick = j + static_cast<int>(rng.below(rest.size() - j));
      std::swap(rest[j], rest[pick]);
      subset.push_back(rest[j]);
    }
  } else {
    internal::IncrementalDesign design(x, prior, crit);
    for (int i : subset) design.add(i);
    while (static_cast<int>(subset.size()) < k) {
      const int next = design.best_candidate(taken);
      design.add(next);
      taken[next] = 1;
      subset.push_back(next);
    }
  }
  std::sort(subset.begin(), subset.end());
  return subset;
}

}  // namespace

double certificate_factor(double d_w, int k) {
  return 1.0 + 8.0 * std::max(d_w, kDwFloor) / k + 8.0 * log_ratio_term(d_w, k);
}

double rejection_eps(double d_w, int k) {
  return std::min(1.0, 4.0 * std::max(d_w, kDwFloor) / k + 6.0 * log_ratio_term(d_w, k));
}

DesignResult select(const DesignMatrix& x, const Prior& prior, const Criterion& crit,
                    const Vector& w, int k, Rng& rng, const SelectOptions& opts) {
  const int n = x.n();
  if (k < 1 || k > n) throw InfeasibleWeights("select: need 1 <= k <= n");
  if (w.size() != n) throw InfeasibleWeights("select: weight vector has wrong length");
  if (!w.allFinite() || (w.array() < -1e-12).any() || (w.array() > 1.0 + 1e-12).any()) {
    throw InfeasibleWeights("select: weights must lie in [0, 1]");
  }
  if (std::abs(w.sum() - k) > kWeightSumTol) {
    throw InfeasibleWeights("select: weights sum to " + std::to_string(w.sum()) +
                            ", expected " + std::to_string(k));
  }
  if (opts.max_attempts < 1) throw std::invalid_argument("select: max_attempts must be >= 1");
  const Vector weights = w.cwiseMax(0.0).cwiseMin(1.0);

  const SymMatrix sigma_w = covariance(x, weights);
  const PsdFactor m(sigma_w + prior.a);
  if (m.singular()) throw SingularMatrix("select: Sigma_w + A is singular");

  DesignResult result;
  result.base_value = eval_factored(crit, m);
  result.d_w = effective_dim(sigma_w, prior.a).value;
  result.eps_used = rejection_eps(result.d_w, k);
  result.bound_factor = certificate_factor(result.d_w, k);
  result.in_guarantee_regime = k >= 4.0 * result.d_w;
  const double threshold = result.bound_factor * result.base_value;

  const WeightVector p(weights / (1.0 + result.eps_used));
  const SpectralKernel kernel = build_kernel(x, prior, p);

  std::optional<std::vector<int>> chosen;
  std::optional<std::vector<int>> best_seen;
  double best_value = std::numeric_limits<double>::infinity();
  for (int attempt = 1; attempt <= opts.max_attempts; ++attempt) {
    result.attempts = attempt;
    Sample s = sample(kernel, rng);
    if (s.diag.union_size > k) continue;
    const double value = eval(crit, subset_covariance(x, s.subset), prior);
    if (value <= threshold) {
      chosen = std::move(s.subset);
      result.accepted_by = AcceptedBy::kBoundAccept;
      break;
    }
    if (!best_seen || value < best_value) {
      best_value = value;
      best_seen = std::move(s.subset);
    }
  }
  if (!chosen) {
    if (!best_seen) throw NoSizeFeasibleDraw(opts.max_attempts);
    chosen = std::move(best_seen);
    result.accepted_by = AcceptedBy::kBestSeenFallback;
  }

  result.sampled_size = static_cast<int>(chosen->size());
  result.subset = pad_subset(x, prior, crit, std::move(*chosen), k, opts.pad, rng);
  result.value = eval(crit, subset_covariance(x, result.subset), prior);
  return result;
}

DesignResult select_uniform(const DesignMatrix& x, const Prior& prior, const Criterion& crit,
                            int k, Rng& rng, const SelectOptions& opts) {
  if (k < 1 || k > x.n()) throw InfeasibleWeights("select_uniform: need 1 <= k <= n");
  const Vector w = Vector::Constant(x.n(), static_cast<double>(k) / x.n());
  return select(x, prior, crit, w, k, rng, opts);
}

DesignResult select_relaxed(const DesignMatrix& x, const Prior& prior, const Criterion& crit,
                            int k, Rng& rng, const RelaxConfig& relax_cfg,
                            const SelectOptions& opts) {
  return select_relaxed(x, prior, crit, k, rng, solve(x, prior, crit, k, relax_cfg), opts);
}

DesignResult select_relaxed(const DesignMatrix& x, const Prior& prior, const Criterion& crit,
                            int k, Rng& rng, const RelaxSolution& relaxed,
                            const SelectOptions& opts) {
  return select(x, prior, crit, relaxed.w, k, rng, opts);
}

}  // namespace bed
